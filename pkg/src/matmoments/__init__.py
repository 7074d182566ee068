"""Matrix moment spaces on [0, 1] and the unit circle.

Canonical-moment transforms, matrix ensembles and exact samplers, large
deviation rate functions, Schur and Caratheodory function tools, and a
verification harness for the associated limit theorems.
"""

from . import circle, ensembles, harness, hermitian, interval, io, measures, schur
from .circle import (
    from_canonical_circle,
    rate_canonical_circle,
    rate_measure_circle,
    rate_moments_circle,
    to_canonical_circle,
    toeplitz_det_ratio,
    verblunsky_det_product,
)
from .ensembles import EnsembleParams, RngStream, SampleBatch, sample_batch
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _error_names
from .interval import (
    from_canonical_interval,
    moment_range,
    range_det_identity,
    rate_canonical_interval,
    rate_measure_interval,
    rate_moments_interval,
    to_canonical_interval,
)
from .measures import DensityGridMeasure, DiscreteMatrixMeasure
from .schur import (
    schur_params_from_canonical,
    schur_params_from_moments,
    schur_taylor_from_params,
    szego_triple_identity,
)

__version__ = "0.1.0"

__all__ = [
    "circle",
    "ensembles",
    "harness",
    "hermitian",
    "interval",
    "io",
    "measures",
    "schur",
    "from_canonical_circle",
    "rate_canonical_circle",
    "rate_measure_circle",
    "rate_moments_circle",
    "to_canonical_circle",
    "toeplitz_det_ratio",
    "verblunsky_det_product",
    "EnsembleParams",
    "RngStream",
    "SampleBatch",
    "sample_batch",
    "from_canonical_interval",
    "moment_range",
    "range_det_identity",
    "rate_canonical_interval",
    "rate_measure_interval",
    "rate_moments_interval",
    "to_canonical_interval",
    "DensityGridMeasure",
    "DiscreteMatrixMeasure",
    "schur_params_from_canonical",
    "schur_params_from_moments",
    "schur_taylor_from_params",
    "szego_triple_identity",
    *_error_names,
]
