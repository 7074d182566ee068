"""Trigonometric matrix moment space: Toeplitz tests, L/R/M matrices, Verblunsky maps, rates.

A moment vector is an array ``(..., n, p, p)`` holding ``Gamma_1..Gamma_n``
with ``Gamma_0 = I`` and ``Gamma_{-j} = Gamma_j^*`` implied.  The transforms
accept leading batch axes so that many vectors can be mapped at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotInterior, NotStrictContraction
from .hermitian import TOL, dagger, hermitian, singular_values, sqrt_and_inv_sqrt
from .measures import DensityGridMeasure, DiscreteMatrixMeasure

# relative margin for positive definiteness of block Toeplitz matrices
TOEPLITZ_TOL = 1e-12


@dataclass(frozen=True)
class LrmState:
    """Left/right radii and centre of the range of the next trigonometric moment."""

    L: np.ndarray
    R: np.ndarray
    M: np.ndarray
    level: int


def as_trig_sequence(seq, p: int | None = None) -> np.ndarray:
    a = np.asarray(seq, dtype=complex)
    if a.ndim == 1:
        a = a[:, None, None]
    if a.ndim < 3 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(f"expected shape (..., n, p, p), got {a.shape}")
    if p is not None and a.shape[-1] != p:
        raise DimensionMismatch(f"expected p={p}, got {a.shape[-1]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _gamma(G: np.ndarray, j: int) -> np.ndarray:
    """``Gamma_j`` for any integer ``j`` (batch-aware)."""
    if j == 0:
        return np.broadcast_to(np.eye(G.shape[-1], dtype=complex), G.shape[:-3] + G.shape[-2:])
    if j > 0:
        return G[..., j - 1, :, :]
    return dagger(G[..., -j - 1, :, :])


def _assemble(G: np.ndarray, size: int, index) -> np.ndarray:
    p = G.shape[-1]
    batch = G.shape[:-3]
    out = np.empty(batch + (size * p, size * p), dtype=complex)
    for i in range(size):
        for j in range(size):
            out[..., i * p : (i + 1) * p, j * p : (j + 1) * p] = _gamma(G, index(i, j))
    return out


def block_toeplitz(G) -> np.ndarray:
    """``T_n`` with block ``(i, j) = Gamma_{i-j}``, ``i, j = 0..n``."""
    G = as_trig_sequence(G)
    return _assemble(G, G.shape[-3] + 1, lambda i, j: i - j)


def _section(G: np.ndarray, k: int) -> np.ndarray:
    # T_{k-1} in the orientation matching the row vectors (Gamma_1..Gamma_k)
    # and (Gamma_{-k}..Gamma_{-1}); it is a block-reversal similarity of block_toeplitz.
    return _assemble(G, k, lambda i, j: j - i)


def _pd_margin(t: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(hermitian(t))
    return w[..., 0] / np.max(np.abs(w), axis=-1)


def is_interior_circle(G, tol: float = TOEPLITZ_TOL) -> bool:
    """True when ``T_n`` is positive definite (relative margin ``tol``)."""
    G = as_trig_sequence(G)
    if G.shape[-3] == 0:
        return True
    return bool(np.all(_pd_margin(block_toeplitz(G)) > tol))


def _lrm_unchecked(G: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(L_k, R_k, M_k)`` from ``Gamma_1..Gamma_k`` (batch-aware, no interiority test)."""
    p = G.shape[-1]
    batch = G.shape[:-3]
    eye = np.broadcast_to(np.eye(p, dtype=complex), batch + (p, p))
    if k == 0:
        return eye.copy(), eye.copy(), np.zeros(batch + (p, p), dtype=complex)
    left = np.concatenate([_gamma(G, j) for j in range(1, k + 1)], axis=-1)
    right = np.concatenate([_gamma(G, j) for j in range(-k, 0)], axis=-1)
    T = _section(G, k)
    solved = np.linalg.solve(T, dagger(np.concatenate([left, right], axis=-2)))
    sl, sr = solved[..., : p], solved[..., p:]
    L = hermitian(eye - left @ sl)
    R = hermitian(eye - right @ sr)
    M = left @ sr
    return L, R, M


def lrm_matrices(G) -> LrmState:
    """L, R and M of a single interior prefix ``Gamma_1..Gamma_n``."""
    G = as_trig_sequence(G)
    if G.ndim != 3:
        raise DimensionMismatch("lrm_matrices takes a single moment vector")
    if not is_interior_circle(G):
        raise NotInterior("block Toeplitz matrix is not positive definite")
    n = G.shape[0]
    L, R, M = _lrm_unchecked(G, n)
    return LrmState(L, R, M, n)


def _require_strict(A: np.ndarray, tol: float) -> None:
    if A.size and np.any(singular_values(A)[..., -1] >= 1.0 - tol):
        raise NotStrictContraction("canonical moment is not a strict contraction")


def lr_recursion(state: LrmState, A_k, tol: float = TOL) -> tuple[np.ndarray, np.ndarray]:
    """Advance ``(L, R)`` one level given the next Verblunsky coefficient."""
    A = np.asarray(A_k, dtype=complex)
    _require_strict(A, tol)
    return _advance_lr(state.L, state.R, A)


def _advance_lr(L: np.ndarray, R: np.ndarray, A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    eye = np.eye(A.shape[-1], dtype=complex)
    ls, _ = sqrt_and_inv_sqrt(L)
    rs, _ = sqrt_and_inv_sqrt(R)
    L_new = hermitian(ls @ (eye - A @ dagger(A)) @ ls)
    R_new = hermitian(rs @ (eye - dagger(A) @ A) @ rs)
    return L_new, R_new


def to_canonical_circle(G) -> np.ndarray:
    """Verblunsky coefficients ``A_j = L_{j-1}^{-1/2} (Gamma_j - M_{j-1}) R_{j-1}^{-1/2}``."""
    G = as_trig_sequence(G)
    if G.shape[-3] and not is_interior_circle(G):
        raise NotInterior("block Toeplitz matrix is not positive definite")
    A = np.empty_like(G)
    for k in range(G.shape[-3]):
        L, R, M = _lrm_unchecked(G, k)
        _, lis = sqrt_and_inv_sqrt(L)
        _, ris = sqrt_and_inv_sqrt(R)
        A[..., k, :, :] = lis @ (G[..., k, :, :] - M) @ ris
    return A


def from_canonical_circle(A, tol: float = TOL) -> np.ndarray:
    """Inverse of :func:`to_canonical_circle`.

    ``Gamma_k = L_{k-1}^{1/2} A_k R_{k-1}^{1/2} + M_{k-1}``; L and R are carried by
    the one-step recursion and ``M_{k-1}`` is solved from the prefix built so far.
    """
    A = as_trig_sequence(A)
    _require_strict(A, tol)
    p = A.shape[-1]
    batch = A.shape[:-3]
    eye = np.broadcast_to(np.eye(p, dtype=complex), batch + (p, p))
    L, R = eye.copy(), eye.copy()
    G = np.zeros_like(A)
    for k in range(A.shape[-3]):
        _, _, M = _lrm_unchecked(G[..., :k, :, :], k)
        ls, _ = sqrt_and_inv_sqrt(L)
        rs, _ = sqrt_and_inv_sqrt(R)
        G[..., k, :, :] = ls @ A[..., k, :, :] @ rs + M
        L, R = _advance_lr(L, R, A[..., k, :, :])
    return G


def toeplitz_det_ratio(G) -> float:
    """``det T_k / det T_{k-1}`` via log-determinants."""
    G = as_trig_sequence(G)
    if G.ndim != 3:
        raise DimensionMismatch("toeplitz_det_ratio takes a single moment vector")
    if not is_interior_circle(G):
        raise NotInterior("block Toeplitz matrix is not positive definite")
    k = G.shape[0]
    if k == 0:
        return 1.0
    _, big = np.linalg.slogdet(block_toeplitz(G))
    _, small = np.linalg.slogdet(block_toeplitz(G[:-1]))
    return float(math.exp(big - small))


def verblunsky_det_product(A) -> float:
    """``prod_i det(I - A_i^* A_i)``."""
    A = as_trig_sequence(A)
    w = np.linalg.eigvalsh(dagger(A) @ A)
    return float(np.prod(1.0 - w))


def trig_moments_of_measure(mu, n: int) -> np.ndarray:
    """``Gamma_j = integral e^{i j theta} dmu(theta)``, ``j = 1..n``."""
    j = np.arange(1, n + 1)
    if isinstance(mu, DiscreteMatrixMeasure):
        mu.check_normalized()
        phases = np.exp(1j * j[:, None] * mu.locations[None, :])
        G = np.einsum("ja,akl->jkl", phases, mu.weights)
    elif isinstance(mu, DensityGridMeasure):
        mu.check_normalized()
        phases = np.exp(1j * j[:, None] * mu.nodes[None, :]) * mu.quad_weights[None, :]
        G = np.einsum("ja,akl->jkl", phases, mu.values)
        if mu.singular_mass is not None:
            sm = mu.singular_mass
            G = G + np.einsum(
                "ja,akl->jkl", np.exp(1j * j[:, None] * sm.locations[None, :]), sm.weights
            )
    else:
        raise TypeError(f"unsupported measure type {type(mu).__name__}")
    return G


def _check_p(p: int | None, actual: int) -> int:
    if p is not None and p != actual:
        raise DimensionMismatch(f"p={p} but matrices are {actual}x{actual}")
    return actual


def rate_canonical_circle(A, p: int | None = None) -> float:
    """``-2p sum_i log det(I - A_i^* A_i)``; ``inf`` unless every ``A_i`` is a strict contraction."""
    A = as_trig_sequence(A)
    p = _check_p(p, A.shape[-1])
    w = np.linalg.eigvalsh(dagger(A) @ A)
    if np.any(w >= 1.0):
        return math.inf
    return float(-2 * p * np.sum(np.log1p(-w)))


def rate_moments_circle(G, p: int | None = None) -> float:
    """``-2p log(det T_k / det T_{k-1})``, ``inf`` off the interior."""
    G = as_trig_sequence(G)
    p = _check_p(p, G.shape[-1])
    if G.shape[0] == 0:
        return 0.0
    if not is_interior_circle(G):
        return math.inf
    sign, big = np.linalg.slogdet(block_toeplitz(G))
    _, small = np.linalg.slogdet(block_toeplitz(G[:-1]))
    if sign.real <= 0:
        return math.inf
    return float(-2 * p * (big - small))


def rate_measure_circle(mu: DensityGridMeasure | DiscreteMatrixMeasure) -> float:
    """``-(p / pi) integral log det W dtheta`` by the trapezoid rule on the grid.

    A purely atomic measure has no absolutely continuous part and rate ``inf``.
    """
    if isinstance(mu, DiscreteMatrixMeasure):
        return math.inf
    mu.require_nodes(8)
    w = np.linalg.eigvalsh(mu.values)
    if np.any(w <= 0.0):
        return math.inf
    logdet = np.sum(np.log(w), axis=-1)
    # quad_weights integrate dtheta / 2pi, so the dtheta integral is 2pi times the sum
    return float(-2.0 * mu.p * np.dot(mu.quad_weights, logdet))


def linearization_residual(A, eps: float) -> float:
    """``||Gamma(eps A) - eps A|| / (eps ||A||)`` in the Frobenius norm; 0 for ``A = 0``."""
    A = as_trig_sequence(A)
    norm = float(np.linalg.norm(A.ravel()))
    if norm == 0.0:
        return 0.0
    G = from_canonical_circle(eps * A)
    return float(np.linalg.norm((G - eps * A).ravel()) / (eps * norm))


__all__ = [
    "LrmState",
    "block_toeplitz",
    "is_interior_circle",
    "lrm_matrices",
    "lr_recursion",
    "to_canonical_circle",
    "from_canonical_circle",
    "toeplitz_det_ratio",
    "verblunsky_det_product",
    "trig_moments_of_measure",
    "rate_canonical_circle",
    "rate_moments_circle",
    "rate_measure_circle",
    "linearization_residual",
]
