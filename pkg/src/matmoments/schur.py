"""Caratheodory and Schur functions of matrix measures on the unit circle.

Conventions: ``F(z) = integral (e^{it} + z) / (e^{it} - z) dmu(t)`` has Taylor
coefficients ``I, 2 C_1, 2 C_2, ...`` with ``C_k = Gamma_k^*``; the Schur
function is ``f(z) = z^{-1} (F - I)(F + I)^{-1}``.  A finite parameter sequence
``A_1..A_n`` defines ``f`` through the backward recursion

    f_{k-1}(z) = (B_k^R)^{-1} [z f_k(z) + A_k^*] [I + z A_k f_k(z)]^{-1} B_k^L,
    f_n = 0,

with defects ``B^R = (I - A^* A)^{1/2}`` and ``B^L = (I - A A^*)^{1/2}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .circle import as_trig_sequence, to_canonical_circle
from .errors import (
    GridTooCoarse,
    InconsistentInputs,
    NonInvertible,
    NotContraction,
    NotStrictContraction,
    TooCloseToBoundary,
)
from .hermitian import TOL, dagger, hermitian, hermitian_sqrt, singular_values
from .measures import DensityGridMeasure, DiscreteMatrixMeasure, circle_nodes

BOUNDARY_MARGIN = 1e-6
DEFAULT_GRID = 512
# radius used to recover f(0) from nearby values when no coefficients are known
ORIGIN_PROBE_RADIUS = 1e-4


def caratheodory_coeffs(G) -> np.ndarray:
    """``C_k = Gamma_k^*``."""
    return dagger(as_trig_sequence(G))


def caratheodory_eval(mu, z: complex) -> np.ndarray:
    """Herglotz integral ``F(z)`` of a normalized measure (atoms or quadrature grid)."""
    z = complex(z)
    if abs(z) > 1.0 - BOUNDARY_MARGIN:
        raise TooCloseToBoundary(f"|z|={abs(z):.3g} exceeds 1 - {BOUNDARY_MARGIN:g}")
    if isinstance(mu, DiscreteMatrixMeasure):
        mu.check_normalized()
        return _herglotz_atoms(mu, z)
    if isinstance(mu, DensityGridMeasure):
        mu.check_normalized()
        e = np.exp(1j * mu.nodes)
        F = np.einsum("a,akl->kl", mu.quad_weights * (e + z) / (e - z), mu.values)
        if mu.singular_mass is not None:
            # a singular part carries only part of the mass, so it is not normalized on its own
            F = F + _herglotz_atoms(mu.singular_mass, z)
        return F
    raise TypeError(f"unsupported measure type {type(mu).__name__}")


def _herglotz_atoms(atoms: DiscreteMatrixMeasure, z: complex) -> np.ndarray:
    e = np.exp(1j * atoms.locations)
    return np.einsum("a,akl->kl", (e + z) / (e - z), atoms.weights)


def _solve_right(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """``X Y^{-1}`` for (stacks of) square matrices."""
    try:
        return dagger(np.linalg.solve(dagger(Y), dagger(X)))
    except np.linalg.LinAlgError as exc:
        raise NonInvertible("matrix is singular") from exc


def _check_invertible(Y: np.ndarray, what: str) -> None:
    s = singular_values(Y)
    if np.any(s[..., 0] <= TOL * np.maximum(s[..., -1], 1.0)):
        raise NonInvertible(f"{what} is not invertible")


def schur_from_caratheodory(
    F_value,
    z: complex,
    *,
    f0=None,
    F: Callable[[complex], np.ndarray] | None = None,
) -> np.ndarray:
    """``f(z) = z^{-1} (F - I)(F + I)^{-1}``.

    At ``z = 0`` the quotient is a removable singularity: ``f0`` (the leading
    Taylor coefficient) is returned when given; otherwise ``F`` is sampled on a
    small circle and the values of ``f`` there are averaged, which recovers
    ``f(0)`` up to ``O(r^8)``.
    """
    z = complex(z)
    if z == 0:
        if f0 is not None:
            return np.asarray(f0, dtype=complex)
        if F is None:
            raise ValueError("f(0) needs either the leading coefficient or an evaluator for F")
        pts = ORIGIN_PROBE_RADIUS * np.exp(2j * np.pi * np.arange(8) / 8)
        return np.mean([schur_from_caratheodory(F(w), w) for w in pts], axis=0)
    Fv = np.asarray(F_value, dtype=complex)
    eye = np.eye(Fv.shape[-1])
    _check_invertible(Fv + eye, "F + I")
    return _solve_right(Fv - eye, Fv + eye) / z


def caratheodory_from_schur(f_value, z: complex) -> np.ndarray:
    """``F = (I + z f)(I - z f)^{-1}``."""
    f = np.asarray(f_value, dtype=complex)
    eye = np.eye(f.shape[-1])
    _check_invertible(eye - z * f, "I - z f")
    return _solve_right(eye + z * f, eye - z * f)


def defect_matrices(A, tol: float = TOL) -> tuple[np.ndarray, np.ndarray]:
    """``(B^R, B^L) = ((I - A^* A)^{1/2}, (I - A A^*)^{1/2})``."""
    A = np.asarray(A, dtype=complex)
    if singular_values(A)[..., -1].max(initial=0.0) > 1.0 + tol:
        raise NotContraction("defects need a contraction")
    eye = np.eye(A.shape[-1])
    return hermitian_sqrt(eye - dagger(A) @ A), hermitian_sqrt(eye - A @ dagger(A))


def _as_params(A, tol: float) -> np.ndarray:
    A = as_trig_sequence(A)
    if A.ndim != 3:
        raise ValueError("expected a single parameter sequence of shape (n, p, p)")
    if A.shape[0] and singular_values(A)[..., -1].max() >= 1.0 - tol:
        raise NotStrictContraction("Schur parameters must be strict contractions")
    return A


# ---- parameter normalizations --------------------------------------------------
#
# The recursion above normalizes by ordered products of defect roots,
# P_k = B^L(a_1) ... B^L(a_k) and Q_k = B^R(a_1) ... B^R(a_k), so that
#     Gamma_k - M_{k-1} = P_{k-1} a_k Q_{k-1}^*,
# whereas canonical moments normalize by the Hermitian roots of L_{k-1} and
# R_{k-1}.  Since L_k = P_k P_k^* and R_k = Q_k Q_k^*, the two sequences differ
# by unitary factors at each level (and agree for p = 1).


def schur_params_from_canonical(A, tol: float = TOL) -> np.ndarray:
    """Schur parameters of the measure whose canonical moments are ``A``."""
    A = _as_params(A, tol)
    p = A.shape[-1]
    eye = np.eye(p)
    L, R, P, Q = eye, eye, eye, eye
    out = np.empty_like(A)
    for k, a in enumerate(A):
        ls = hermitian_sqrt(L)
        rs = hermitian_sqrt(R)
        alpha = np.linalg.solve(P, ls @ a @ rs) @ np.linalg.inv(dagger(Q))
        out[k] = alpha
        br_a, bl_a = defect_matrices(a)
        L, R = ls @ bl_a @ bl_a @ ls, rs @ br_a @ br_a @ rs
        br, bl = defect_matrices(alpha)
        P, Q = P @ bl, Q @ br
    return out


def canonical_from_schur_params(alpha, tol: float = TOL) -> np.ndarray:
    """Inverse of :func:`schur_params_from_canonical`."""
    alpha = _as_params(alpha, tol)
    p = alpha.shape[-1]
    eye = np.eye(p)
    L, R, P, Q = eye, eye, eye, eye
    out = np.empty_like(alpha)
    for k, al in enumerate(alpha):
        ls, rs = hermitian_sqrt(L), hermitian_sqrt(R)
        a = np.linalg.solve(ls, P @ al @ dagger(Q)) @ np.linalg.inv(rs)
        out[k] = a
        br_a, bl_a = defect_matrices(a)
        L, R = ls @ bl_a @ bl_a @ ls, rs @ br_a @ br_a @ rs
        br, bl = defect_matrices(al)
        P, Q = P @ bl, Q @ br
    return out


def schur_params_from_moments(G) -> np.ndarray:
    """Schur parameters ``a_k = P_{k-1}^{-1} (Gamma_k - M_{k-1}) Q_{k-1}^{-*}`` of interior moments."""
    return schur_params_from_canonical(to_canonical_circle(G))


def schur_taylor_from_params(A, tol: float = TOL) -> np.ndarray:
    """Taylor coefficients ``G_0..G_{n-1}`` of the Schur function with parameters ``A_1..A_n``.

    Coefficients of ``f_{k-1}`` follow from those of ``f_k`` by

        G_0 = A^*,
        G_m = (B^R)^{-1} g_{m-1} B^L - sum_{j<m} G_j (B^L)^{-1} A g_{m-1-j} B^L,

    starting from ``f_n = 0``.  ``G_m`` depends only on ``A_1..A_{m+1}``.
    """
    A = _as_params(A, tol)
    n, p = A.shape[0], A.shape[-1]
    g = np.zeros((0, p, p), dtype=complex)
    for k in range(n - 1, -1, -1):
        a = A[k]
        br, bl = defect_matrices(a)
        br_inv = np.linalg.inv(br)
        bl_inv_a = np.linalg.solve(bl, a)
        length = n - k
        G = np.zeros((length, p, p), dtype=complex)
        G[0] = dagger(a)
        for m in range(1, length):
            acc = br_inv @ g[m - 1]
            for j in range(m):
                acc = acc - G[j] @ bl_inv_a @ g[m - 1 - j]
            G[m] = acc @ bl
        g = G
    return g


def schur_eval(A, z, tol: float = TOL) -> np.ndarray:
    """Values ``f(z)`` of the Schur function with parameters ``A``; ``z`` may be an array."""
    A = _as_params(A, tol)
    zs = np.asarray(z, dtype=complex)
    p = A.shape[-1]
    zz = zs.reshape(zs.shape + (1, 1))
    f = np.zeros(zs.shape + (p, p), dtype=complex)
    eye = np.eye(p)
    for k in range(A.shape[0] - 1, -1, -1):
        a = A[k]
        br, bl = defect_matrices(a)
        num = zz * f + dagger(a)
        den = eye + zz * (a @ f)
        f = np.linalg.solve(br, _solve_right(num, den) @ bl)
    return f


def fft_taylor_oracle(func: Callable[[np.ndarray], np.ndarray], r: float = 0.5, m: int = 64, count: int | None = None) -> np.ndarray:
    """Taylor coefficients from samples on ``|z| = r`` via the discrete Fourier transform.

    ``func`` maps an array of points to an array of values ``(points, p, p)``.
    Aliasing contributes ``O((r / rho)^m)`` for analyticity radius ``rho``.
    """
    if not 0 < r <= 0.5:
        raise ValueError("radius must lie in (0, 1/2]")
    if m < 64:
        raise ValueError("need at least 64 sample points")
    z = r * np.exp(2j * np.pi * np.arange(m) / m)
    vals = np.asarray(func(z), dtype=complex)
    coeffs = np.fft.fft(vals, axis=0) / m
    count = m if count is None else count
    scale = r ** -np.arange(count, dtype=float)
    return coeffs[:count] * scale.reshape((count,) + (1,) * (vals.ndim - 1))


def lower_block_toeplitz(G) -> np.ndarray:
    """Lower-triangular block Toeplitz matrix with block ``(i, j) = G_{i-j}`` for ``i >= j``."""
    G = as_trig_sequence(G)
    n, p = G.shape[0], G.shape[-1]
    out = np.zeros((n * p, n * p), dtype=complex)
    for i in range(n):
        for j in range(i + 1):
            out[i * p : (i + 1) * p, j * p : (j + 1) * p] = G[i - j]
    return out


def contraction_norm(G) -> float:
    """Spectral norm of :func:`lower_block_toeplitz`."""
    T = lower_block_toeplitz(G)
    if T.size == 0:
        return 0.0
    return float(np.linalg.norm(T, 2))


def contraction_toeplitz_test(G, tol: float = TOL) -> bool:
    """True when the lower block Toeplitz matrix of ``G`` is a contraction."""
    return contraction_norm(G) <= 1.0 + tol


@dataclass(frozen=True)
class BoundaryDensityGrid:
    nodes: np.ndarray
    values: np.ndarray

    def as_measure(self) -> DensityGridMeasure:
        n = self.nodes.size
        return DensityGridMeasure(self.nodes, self.values, np.full(n, 1.0 / n))


def boundary_density_from_schur(f_values, theta) -> BoundaryDensityGrid:
    """``W = (I - e^{-it} f^*)^{-1} (I - f^* f) (I - e^{it} f)^{-1}`` node by node."""
    f = np.asarray(f_values, dtype=complex)
    theta = np.asarray(theta, dtype=float).ravel()
    if f.ndim != 3 or f.shape[0] != theta.size:
        raise InconsistentInputs("need one p x p value per node")
    eye = np.eye(f.shape[-1])
    if np.any(singular_values(f)[..., -1] > 1.0 + TOL):
        raise NotContraction("boundary values must be contractions")
    Y = eye - np.exp(1j * theta)[:, None, None] * f
    _check_invertible(Y, "I - e^{it} f")
    X = np.linalg.inv(Y)
    W = dagger(X) @ (eye - dagger(f) @ f) @ X
    return BoundaryDensityGrid(theta, hermitian(W))


def _mean_logdet(values: np.ndarray) -> float:
    if values.shape[0] < 8:
        raise GridTooCoarse(f"{values.shape[0]} nodes, need at least 8")
    w = np.linalg.eigvalsh(hermitian(values))
    if np.any(w <= 0.0):
        return -math.inf
    return float(np.mean(np.sum(np.log(w), axis=-1)))


def rate_caratheodory(FR_values) -> float:
    """``-(p / pi) integral log det F^R(e^{it}) dt`` on a uniform grid."""
    v = np.asarray(FR_values, dtype=complex)
    return -2.0 * v.shape[-1] * _mean_logdet(v)


def rate_schur(f_values) -> float:
    """``-(p / pi) integral log det(I - f^* f) dt`` on a uniform grid."""
    f = np.asarray(f_values, dtype=complex)
    eye = np.eye(f.shape[-1])
    return -2.0 * f.shape[-1] * _mean_logdet(eye - dagger(f) @ f)


@dataclass(frozen=True)
class TripleIdentity:
    """The three entropy quantities and their pairwise absolute gaps."""

    verblunsky: float
    density: float
    schur: float
    jensen_term: float

    @property
    def gaps(self) -> tuple[float, float, float]:
        a, b, c = self.verblunsky, self.density, self.schur
        return abs(a - b), abs(a - c), abs(b - c)

    @property
    def max_gap(self) -> float:
        return max(self.gaps)


def szego_triple_identity(A, W_grid, f_grid, theta=None) -> TripleIdentity:
    """``sum log det(I - A A^*)``, mean of ``log det W`` and mean of ``log det(I - f^* f)``.

    The last two differ pointwise by ``-2 log|det(I - e^{it} f)|``, whose mean
    vanishes because ``det(I - z f) = det(2 (F + I)^{-1})`` has no zeros in the
    disc; its quadrature value is returned as ``jensen_term``.
    """
    A = as_trig_sequence(A)
    W = np.asarray(W_grid.values if isinstance(W_grid, BoundaryDensityGrid) else W_grid, dtype=complex)
    f = np.asarray(f_grid, dtype=complex)
    p = A.shape[-1]
    if W.shape != f.shape or W.ndim != 3 or W.shape[-1] != p:
        raise InconsistentInputs("parameter, density and Schur grids disagree in shape")
    if theta is None:
        theta = circle_nodes(W.shape[0])
    theta = np.asarray(theta, dtype=float)
    if theta.size != W.shape[0]:
        raise InconsistentInputs("node count differs from grid length")
    eye = np.eye(p)
    wA = np.linalg.eigvalsh(eye - A @ dagger(A))
    verb = float(np.sum(np.log(wA))) if A.shape[0] else 0.0
    dens = _mean_logdet(W)
    sch = _mean_logdet(eye - dagger(f) @ f)
    _, ld = np.linalg.slogdet(eye - np.exp(1j * theta)[:, None, None] * f)
    jensen = float(-2.0 * np.mean(ld))
    return TripleIdentity(verb, dens, sch, jensen)


def bernstein_szego_grids(A, n_nodes: int = DEFAULT_GRID) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(theta, f, W)`` on the uniform grid for the finite parameter sequence ``A``."""
    theta = circle_nodes(n_nodes)
    f = schur_eval(A, np.exp(1j * theta))
    W = boundary_density_from_schur(f, theta).values
    return theta, f, W


__all__ = [
    "caratheodory_coeffs",
    "caratheodory_eval",
    "schur_from_caratheodory",
    "caratheodory_from_schur",
    "defect_matrices",
    "schur_params_from_canonical",
    "canonical_from_schur_params",
    "schur_params_from_moments",
    "schur_taylor_from_params",
    "schur_eval",
    "fft_taylor_oracle",
    "lower_block_toeplitz",
    "contraction_norm",
    "contraction_toeplitz_test",
    "BoundaryDensityGrid",
    "boundary_density_from_schur",
    "rate_caratheodory",
    "rate_schur",
    "TripleIdentity",
    "szego_triple_identity",
    "bernstein_szego_grids",
]
