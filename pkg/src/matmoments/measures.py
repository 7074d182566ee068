"""Matrix-valued probability measures: finitely atomic and gridded densities."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, GridTooCoarse, NotNormalized
from .hermitian import as_psd, dagger, hermitian, inv_sqrt

ATOM_NORM_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteMatrixMeasure:
    """Atoms ``(location, weight)``; locations are points of [0, 1] or angles in (-pi, pi]."""

    locations: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        loc = np.asarray(self.locations, dtype=float).ravel()
        w = np.asarray(self.weights, dtype=complex)
        if w.ndim != 3 or w.shape[0] != loc.size or w.shape[1] != w.shape[2]:
            raise DimensionMismatch("weights must have shape (atoms, p, p)")
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "weights", as_psd(w))

    @property
    def p(self) -> int:
        return self.weights.shape[-1]

    def total_mass(self) -> np.ndarray:
        return self.weights.sum(axis=0)

    def check_normalized(self, tol: float = ATOM_NORM_TOL) -> None:
        err = np.max(np.abs(self.total_mass() - np.eye(self.p)))
        if err > tol:
            raise NotNormalized(f"total mass differs from I by {err:.3e}")

    @classmethod
    def normalized(cls, locations, raw_weights) -> "DiscreteMatrixMeasure":
        """Rescale PD weights ``W_i -> T^{-1/2} W_i T^{-1/2}`` with ``T = sum W_i``."""
        w = hermitian(np.asarray(raw_weights, dtype=complex))
        t = inv_sqrt(w.sum(axis=0))
        return cls(locations, hermitian(t @ w @ t))


@dataclass(frozen=True)
class DensityGridMeasure:
    """Density values ``W`` at quadrature nodes, relative to a scalar reference measure.

    ``quad_weights`` integrate against the reference measure (the arcsine law on
    [0, 1] or ``dtheta / 2pi`` on the circle) and sum to its total mass, 1.
    """

    nodes: np.ndarray
    values: np.ndarray
    quad_weights: np.ndarray
    singular_mass: DiscreteMatrixMeasure | None = field(default=None)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float).ravel()
        qw = np.asarray(self.quad_weights, dtype=float).ravel()
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 3 or vals.shape[0] != nodes.size or qw.size != nodes.size:
            raise DimensionMismatch("values must have shape (nodes, p, p)")
        if np.any(qw <= 0):
            raise ValueError("quadrature weights must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "quad_weights", qw)
        object.__setattr__(self, "values", as_psd(vals))

    @property
    def p(self) -> int:
        return self.values.shape[-1]

    def __len__(self) -> int:
        return self.nodes.size

    def require_nodes(self, minimum: int = 8) -> None:
        if len(self) < minimum:
            raise GridTooCoarse(f"{len(self)} nodes, need at least {minimum}")

    def total_mass(self) -> np.ndarray:
        mass = np.einsum("i,ijk->jk", self.quad_weights, self.values)
        if self.singular_mass is not None:
            mass = mass + self.singular_mass.total_mass()
        return mass

    def check_normalized(self, tol: float = 1e-4) -> None:
        err = np.max(np.abs(self.total_mass() - np.eye(self.p)))
        if err > tol:
            raise NotNormalized(f"total mass differs from I by {err:.3e}")

    @classmethod
    def arcsine_grid(
        cls, density: Callable[[float], np.ndarray], p: int, n_nodes: int = 256
    ) -> "DensityGridMeasure":
        """Gauss-Chebyshev grid on [0, 1]: ``x_k = (1 + cos t_k) / 2``, equal weights.

        ``density(x)`` is the density with respect to the arcsine law, so the
        reference weight is integrated exactly.
        """
        k = np.arange(1, n_nodes + 1)
        t = (2 * k - 1) * np.pi / (2 * n_nodes)
        x = 0.5 * (1.0 + np.cos(t))
        vals = np.stack([_as_block(density(xi), p) for xi in x])
        return cls(x, vals, np.full(n_nodes, 1.0 / n_nodes))

    @classmethod
    def circle_grid(
        cls, density: Callable[[float], np.ndarray], p: int, n_nodes: int = 256
    ) -> "DensityGridMeasure":
        """Uniform angular grid on (-pi, pi] with trapezoid weights for ``dtheta / 2pi``."""
        theta = circle_nodes(n_nodes)
        vals = np.stack([_as_block(density(th), p) for th in theta])
        return cls(theta, vals, np.full(n_nodes, 1.0 / n_nodes))


def circle_nodes(n_nodes: int) -> np.ndarray:
    return -np.pi + 2.0 * np.pi * np.arange(1, n_nodes + 1) / n_nodes


def _as_block(v, p: int) -> np.ndarray:
    a = np.asarray(v, dtype=complex)
    if a.ndim == 0:
        return a * np.eye(p)
    return a


def bernstein_szego_density(a: complex):
    """Scalar density ``(1 - |a|^2) / |1 - a e^{i theta}|^2`` w.r.t. ``dtheta / 2pi``."""

    def w(theta: float) -> float:
        return (1.0 - abs(a) ** 2) / abs(1.0 - a * np.exp(1j * theta)) ** 2

    return w


def uniform_over_arcsine(x: float) -> float:
    """Density of the uniform law on [0, 1] relative to the arcsine law."""
    return np.pi * np.sqrt(x * (1.0 - x))


def block_diag_measure_values(*scalar_values: np.ndarray) -> np.ndarray:
    """Stack scalar grid values into diagonal ``p x p`` blocks, one scalar per slot."""
    cols = [np.asarray(v, dtype=complex).ravel() for v in scalar_values]
    out = np.zeros((cols[0].size, len(cols), len(cols)), dtype=complex)
    for i, c in enumerate(cols):
        out[:, i, i] = c
    return out


__all__ = [
    "DiscreteMatrixMeasure",
    "DensityGridMeasure",
    "bernstein_szego_density",
    "uniform_over_arcsine",
    "circle_nodes",
    "block_diag_measure_values",
]
