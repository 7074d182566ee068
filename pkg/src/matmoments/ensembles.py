"""Seeded samplers, log-densities and rate functions of the complex matrix ensembles.

Samplers take a ``numpy.random.Generator`` (or an :class:`RngStream`) and an
optional ``size``; with ``size=None`` they return one ``(p, p)`` matrix,
otherwise a stack ``(size, p, p)``.  :func:`sample_batch` splits a large
request into fixed-size shards, each drawn from its own substream, so the
output depends only on the seed and never on how shards are scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import BadShape, DimensionMismatch
from .hermitian import dagger, hermitian, sqrt_and_inv_sqrt

SHARD_SIZE = 4096
# integer Wishart shapes up to this size are drawn as G G^*; larger ones use
# the triangular construction, which costs O(p^2) instead of O(p^2 a)
GRAM_MAX_SHAPE = 64
LOG_PI = math.log(math.pi)


# ---- random streams ---------------------------------------------------------


@dataclass(frozen=True)
class RngStream:
    """Named random stream: ``(seed, stream_id)`` fully determines every draw."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(ss))

    def substream(self, index: int) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id, index))
        return np.random.Generator(np.random.PCG64(ss))


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


# ---- elementary draws --------------------------------------------------------


def _shape(p: int, size: int | None) -> tuple[int, ...]:
    return (p, p) if size is None else (size, p, p)


def _complex_normal(gen: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian: real and imaginary parts ``N(0, 1/2)``."""
    z = gen.standard_normal(tuple(shape) + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * math.sqrt(0.5)


def sample_ginibre(p: int, rng, size: int | None = None) -> np.ndarray:
    """I.i.d. standard complex Gaussian entries, density ``pi^{-p^2} exp(-||G||^2)``."""
    return _complex_normal(as_generator(rng), _shape(p, size))


def sample_gue(p: int, rng, size: int | None = None) -> np.ndarray:
    """Hermitian matrix with density proportional to ``exp(-tr X^2 / 2)``."""
    g = sample_ginibre(p, rng, size)
    return (g + dagger(g)) * math.sqrt(0.5)


def sample_haar_unitary(p: int, rng, size: int | None = None) -> np.ndarray:
    """Haar unitary from the QR factorization of a Ginibre matrix with phase correction."""
    q, r = np.linalg.qr(sample_ginibre(p, rng, size))
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def _check_shape_param(name: str, value: float, p: int) -> None:
    if not value > p - 1:
        raise BadShape(f"{name}={value} must exceed p-1={p - 1}")


def sample_complex_wishart(p: int, a: float, rng, size: int | None = None) -> np.ndarray:
    """Complex Wishart ``W_p(a)`` with density ``det(X)^{a-p} e^{-tr X} / Gamma_p(a)``."""
    _check_shape_param("a", a, p)
    gen = as_generator(rng)
    if float(a).is_integer() and a <= GRAM_MAX_SHAPE:
        shape = (p, int(a)) if size is None else (size, p, int(a))
        g = _complex_normal(gen, shape)
        return hermitian(g @ dagger(g))
    batch = () if size is None else (size,)
    t = np.zeros(batch + (p, p), dtype=complex)
    shapes = a - np.arange(p)
    t[..., np.arange(p), np.arange(p)] = np.sqrt(gen.gamma(shapes, size=batch + (p,)))
    rows, cols = np.tril_indices(p, -1)
    if rows.size:
        t[..., rows, cols] = _complex_normal(gen, batch + (rows.size,))
    return hermitian(t @ dagger(t))


def _beta_from_wisharts(w1: np.ndarray, w2: np.ndarray) -> np.ndarray:
    _, isq = sqrt_and_inv_sqrt(w1 + w2)
    return hermitian(isq @ w1 @ isq)


def sample_matrix_beta(p: int, a: float, b: float, rng, size: int | None = None) -> np.ndarray:
    """``Beta_p(a, b)`` as ``(W1 + W2)^{-1/2} W1 (W1 + W2)^{-1/2}``."""
    _check_shape_param("a", a, p)
    _check_shape_param("b", b, p)
    gen = as_generator(rng)
    w1 = sample_complex_wishart(p, a, gen, size)
    w2 = sample_complex_wishart(p, b, gen, size)
    return _beta_from_wisharts(w1, w2)


def _prefix(n: int, k: int | None) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    k = n if k is None else k
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return k


def sample_uniform_canonical_interval(
    n: int, p: int, rng, size: int | None = None, k: int | None = None
) -> np.ndarray:
    """Canonical moments of a uniform moment vector: ``U_j ~ Beta_p(p(n-j+1), p(n-j+1))``.

    The ``U_j`` are independent, so ``k`` returns just the first ``k`` of them.
    """
    k = _prefix(n, k)
    gen = as_generator(rng)
    draws = [
        sample_matrix_beta(p, p * (n - j + 1), p * (n - j + 1), gen, size) for j in range(1, k + 1)
    ]
    return np.stack(draws, axis=-3)


def sample_uniform_canonical_circle(
    n: int, p: int, rng, size: int | None = None, k: int | None = None
) -> np.ndarray:
    """Canonical moments of a uniform moment vector: ``A_j = V_j B_j^{1/2}``.

    ``V_j`` is Haar and ``B_j ~ Beta_p(p, 2p(n-j) + p)``; ``k`` truncates to ``A_1..A_k``.
    """
    k = _prefix(n, k)
    gen = as_generator(rng)
    draws = []
    for j in range(1, k + 1):
        v = sample_haar_unitary(p, gen, size)
        b = sample_matrix_beta(p, p, 2 * p * (n - j) + p, gen, size)
        root, _ = _psd_root(b)
        draws.append(v @ root)
    return np.stack(draws, axis=-3)


def _psd_root(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = np.linalg.eigh(b)
    return (v * np.sqrt(np.clip(w, 0.0, None))[..., None, :]) @ dagger(v), w


def haar_subblock_sampler(p: int, q: int, rng, size: int | None = None) -> np.ndarray:
    """Top-left ``p x p`` block of a Haar unitary of size ``p + q``."""
    if q < p:
        raise BadShape(f"q={q} must be at least p={p}")
    u = sample_haar_unitary(p + q, rng, size)
    return u[..., :p, :p].copy()


# ---- batches -------------------------------------------------------------------


ENSEMBLES = (
    "wishart",
    "beta",
    "gue",
    "ginibre",
    "haar",
    "canonical-interval",
    "canonical-circle",
)


@dataclass(frozen=True)
class EnsembleParams:
    p: int
    a: float | None = None
    b: float | None = None
    n: int | None = None
    k: int | None = None

    def as_dict(self) -> dict[str, Any]:
        return {k: v for k, v in vars(self).items() if v is not None}


@dataclass(frozen=True)
class SampleBatch:
    ensemble: str
    params: EnsembleParams
    draws: np.ndarray
    stream: RngStream
    count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "count", int(self.draws.shape[0]))


def _draw(ensemble: str, params: EnsembleParams, gen: np.random.Generator, size: int) -> np.ndarray:
    p = params.p
    if ensemble == "ginibre":
        return sample_ginibre(p, gen, size)
    if ensemble == "gue":
        return sample_gue(p, gen, size)
    if ensemble == "haar":
        return sample_haar_unitary(p, gen, size)
    if ensemble == "wishart":
        return sample_complex_wishart(p, _need(params.a, "a"), gen, size)
    if ensemble == "beta":
        return sample_matrix_beta(p, _need(params.a, "a"), _need(params.b, "b"), gen, size)
    if ensemble == "canonical-interval":
        return sample_uniform_canonical_interval(int(_need(params.n, "n")), p, gen, size, params.k)
    if ensemble == "canonical-circle":
        return sample_uniform_canonical_circle(int(_need(params.n, "n")), p, gen, size, params.k)
    raise ValueError(f"unknown ensemble {ensemble!r}")


def _need(value, name: str):
    if value is None:
        raise ValueError(f"parameter {name} is required for this ensemble")
    return value


def sample_batch(
    ensemble: str,
    params: EnsembleParams,
    count: int,
    stream: RngStream,
    workers: int = 1,
    shard_size: int = SHARD_SIZE,
) -> SampleBatch:
    """``count`` draws; shard ``i`` always uses ``stream.substream(i)`` whatever ``workers`` is."""
    if count < 0:
        raise ValueError("count must be non-negative")
    starts = list(range(0, count, shard_size))

    def shard(i: int) -> np.ndarray:
        size = min(shard_size, count - starts[i])
        return _draw(ensemble, params, stream.substream(i), size)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(shard, range(len(starts))))
    else:
        parts = [shard(i) for i in range(len(starts))]
    if parts:
        draws = np.concatenate(parts, axis=0)
    else:
        draws = _draw(ensemble, params, stream.substream(0), 0)
    return SampleBatch(ensemble, params, draws, stream)


# ---- densities ------------------------------------------------------------------


def log_multigamma(p: int, a: float) -> float:
    """``log Gamma_p(a) = p(p-1)/2 log pi + sum_{i=1}^p log Gamma(a - i + 1)``."""
    _check_shape_param("a", a, p)
    return 0.5 * p * (p - 1) * LOG_PI + sum(math.lgamma(a - i) for i in range(p))


def log_multibeta(p: int, a: float, b: float) -> float:
    return log_multigamma(p, a) + log_multigamma(p, b) - log_multigamma(p, a + b)


def _logdet_open(x: np.ndarray) -> float | None:
    """``log det`` of a Hermitian matrix, or ``None`` unless it is positive definite."""
    w = np.linalg.eigvalsh(hermitian(x))
    if np.any(w <= 0.0):
        return None
    return float(np.sum(np.log(w)))


def _square(x, p: int | None = None) -> np.ndarray:
    a = np.asarray(x, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if p is not None and a.shape[0] != p:
        raise DimensionMismatch(f"expected p={p}, got {a.shape[0]}")
    return a


def log_density_beta(p: int, a: float, b: float, X) -> float:
    """Log-density of ``Beta_p(a, b)``; ``-inf`` unless ``0 < X < I``."""
    _check_shape_param("a", a, p)
    _check_shape_param("b", b, p)
    X = hermitian(_square(X, p))
    lx = _logdet_open(X)
    ly = _logdet_open(np.eye(p) - X)
    if lx is None or ly is None:
        return -math.inf
    return -log_multibeta(p, a, b) + (a - p) * lx + (b - p) * ly


def log_density_wishart(p: int, a: float, X) -> float:
    """Log-density of ``W_p(a)``; ``-inf`` unless ``X > 0``."""
    _check_shape_param("a", a, p)
    X = hermitian(_square(X, p))
    lx = _logdet_open(X)
    if lx is None:
        return -math.inf
    return -log_multigamma(p, a) + (a - p) * lx - float(np.trace(X).real)


def log_circle_normalizer(p: int, n: int, k: int) -> float:
    """``log c_k^(n)`` for the density ``det(I - A^* A)^{2p(n-k)} / c_k^(n)`` on ``p x p`` contractions."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    s = 2 * p * (n - k)
    return p * p * LOG_PI + log_multigamma(p, s + p) - log_multigamma(p, s + 2 * p)


def log_density_canonical_circle(A, n: int, k: int) -> float:
    """Log-density of the ``k``-th Verblunsky coefficient of a uniform moment vector."""
    A = _square(A)
    p = A.shape[0]
    ld = _logdet_open(np.eye(p) - dagger(A) @ A)
    if ld is None:
        return -math.inf
    return 2 * p * (n - k) * ld - log_circle_normalizer(p, n, k)


# ---- rate functions -----------------------------------------------------------------


def wishart_rate(X, a: float) -> float:
    """``tr X - a log det X - a p (1 - log a)``; ``inf`` unless ``X > 0``."""
    if not a > 0:
        raise ValueError("a must be positive")
    w = np.linalg.eigvalsh(hermitian(_square(X)))
    if np.any(w <= 0.0):
        return math.inf
    # grouped per eigenvalue so the minimizer X = aI gives exactly 0
    return float(np.sum(w - a) - a * np.sum(np.log(w / a)))


def _rate_p(B: np.ndarray, p: int | None) -> int:
    if p is not None and p != B.shape[0]:
        raise DimensionMismatch(f"p={p} but B is {B.shape[0]}x{B.shape[0]}")
    return B.shape[0]


def beta_rate_symmetric(B, a: float, p: int | None = None) -> float:
    """``-a log det(B - B^2) - 2 a p log 2`` on ``0 < B < I``, else ``inf``."""
    B = hermitian(_square(B))
    p = _rate_p(B, p)
    w = np.linalg.eigvalsh(B)
    if np.any(w <= 0.0) or np.any(w >= 1.0):
        return math.inf
    return float(-a * np.sum(np.log(4.0 * w * (1.0 - w))))


def beta_rate_asymmetric(B, a: float, p: int | None = None) -> float:
    """``-a log det(I - B)`` on ``0 < B < I``, else ``inf``."""
    B = hermitian(_square(B))
    _rate_p(B, p)
    w = np.linalg.eigvalsh(B)
    if np.any(w <= 0.0) or np.any(w >= 1.0):
        return math.inf
    return float(-a * np.sum(np.log1p(-w)))


def scaled_wishart_rate(X) -> float:
    """``tr X`` on the PSD cone, ``inf`` elsewhere."""
    X = hermitian(_square(X))
    w = np.linalg.eigvalsh(X)
    if w[0] < -1e-10 * max(1.0, float(np.max(np.abs(w)))):
        return math.inf
    return float(np.trace(X).real)


def wishart_laplace(K, a: float) -> float:
    """Log Laplace transform ``-a log det(I - K)`` of ``W_p(a)``; ``inf`` unless ``K < I``."""
    K = hermitian(_square(K))
    w = np.linalg.eigvalsh(K)
    if np.any(w >= 1.0):
        return math.inf
    return float(-a * np.sum(np.log1p(-w)))


__all__ = [
    "RngStream",
    "EnsembleParams",
    "SampleBatch",
    "ENSEMBLES",
    "sample_ginibre",
    "sample_gue",
    "sample_haar_unitary",
    "sample_complex_wishart",
    "sample_matrix_beta",
    "sample_uniform_canonical_interval",
    "sample_uniform_canonical_circle",
    "haar_subblock_sampler",
    "sample_batch",
    "log_multigamma",
    "log_multibeta",
    "log_density_beta",
    "log_density_wishart",
    "log_circle_normalizer",
    "log_density_canonical_circle",
    "wishart_rate",
    "beta_rate_symmetric",
    "beta_rate_asymmetric",
    "scaled_wishart_rate",
    "wishart_laplace",
]
