"""Matrix moment space on [0, 1]: Hankel tests, moment ranges, canonical moments, rates.

Moment vectors are arrays of shape ``(n, p, p)`` holding ``S_1..S_n``;
``S_0 = I`` is implicit.  Canonical vectors have the same layout and hold
``U_1..U_n`` with ``0 < U_k < I``.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, GridTooCoarse, NotInInterior, NotInterior
from .hermitian import TOL, as_square, dagger, hermitian, sqrt_and_inv_sqrt
from .measures import DensityGridMeasure, DiscreteMatrixMeasure

LOG2 = math.log(2.0)
# Hankel matrices of generic interior points reach condition numbers near
# 1e12 by n = 12, so the interior test uses a margin at rounding level.
HANKEL_TOL = 1e-14


def as_matrix_sequence(seq, p: int | None = None) -> np.ndarray:
    a = np.asarray(seq, dtype=complex)
    if a.ndim == 1:
        # scalar sequence, p = 1
        a = a[:, None, None]
    if a.ndim != 3:
        raise DimensionMismatch(f"expected shape (n, p, p), got {a.shape}")
    return as_square(a, p)


def _with_s0(S: np.ndarray) -> np.ndarray:
    p = S.shape[-1]
    return np.concatenate([np.eye(p, dtype=complex)[None], S], axis=0)


def _block_hankel(blocks: int, entry) -> np.ndarray:
    if blocks == 0:
        return np.zeros((0, 0), dtype=complex)
    return np.block([[entry(i + j) for j in range(blocks)] for i in range(blocks)])


def _lower_hankel(S0: np.ndarray, n: int) -> np.ndarray:
    m, odd = divmod(n, 2)
    if odd:
        return _block_hankel(m + 1, lambda s: S0[s + 1])
    return _block_hankel(m + 1, lambda s: S0[s])


def _upper_hankel(S0: np.ndarray, n: int) -> np.ndarray:
    m, odd = divmod(n, 2)
    if odd:
        return _block_hankel(m + 1, lambda s: S0[s] - S0[s + 1])
    return _block_hankel(m, lambda s: S0[s + 1] - S0[s + 2])


def hankel_pair(S) -> tuple[np.ndarray, np.ndarray]:
    """Block Hankel matrices ``(H_lower_n, H_upper_n)`` of ``S_1..S_n``."""
    S = as_matrix_sequence(S)
    n = S.shape[0]
    if n < 1:
        raise ValueError("need at least one moment")
    S0 = _with_s0(S)
    return hermitian(_lower_hankel(S0, n)), hermitian(_upper_hankel(S0, n))


def _is_pd_scaled(h: np.ndarray, tol: float) -> bool:
    if h.size == 0:
        return True
    w = np.linalg.eigvalsh(h)
    scale = np.max(np.abs(w))
    return bool(scale > 0 and w[0] > tol * scale)


def is_interior_interval(S, tol: float = HANKEL_TOL) -> bool:
    """Both block Hankel matrices positive definite (relative margin ``tol``)."""
    S = as_matrix_sequence(S)
    if S.shape[0] == 0:
        return True
    lo, hi = hankel_pair(S)
    return _is_pd_scaled(lo, tol) and _is_pd_scaled(hi, tol)


def _quad_form(row: np.ndarray, H: np.ndarray) -> np.ndarray:
    """``row H^{-1} row*`` by Cholesky solve."""
    if row.shape[1] == 0:
        return np.zeros((row.shape[0], row.shape[0]), dtype=complex)
    try:
        cf = scipy.linalg.cho_factor(H, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotInterior("Hankel matrix is not positive definite") from exc
    return row @ scipy.linalg.cho_solve(cf, dagger(row))


def _range_unchecked(S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n, p = S.shape[0], S.shape[-1]
    eye = np.eye(p, dtype=complex)
    if n == 0:
        return np.zeros((p, p), dtype=complex), eye
    S0 = _with_s0(S)
    m, odd = divmod(n, 2)
    if odd:
        # n = 2m + 1 -> lower row (S_{m+1}..S_{2m+1}), upper row (S_{m+1}-S_{m+2}..S_{2m}-S_{2m+1})
        lrow = np.hstack([S0[j] for j in range(m + 1, 2 * m + 2)])
        urow = [S0[j] - S0[j + 1] for j in range(m + 1, 2 * m + 1)]
    else:
        lrow = np.hstack([S0[j] for j in range(m + 1, 2 * m + 1)])
        urow = [S0[j] - S0[j + 1] for j in range(m, 2 * m)]
    urow = np.hstack(urow) if urow else np.zeros((p, 0), dtype=complex)
    lower = _quad_form(lrow, hermitian(_lower_hankel(S0, n - 1)))
    if n == 1:
        upper = S0[1].copy()
    else:
        upper = S0[n] - _quad_form(urow, hermitian(_upper_hankel(S0, n - 1)))
    return hermitian(lower), hermitian(upper)


def moment_range(S) -> tuple[np.ndarray, np.ndarray]:
    """Range ``(S^-_{n+1}, S^+_{n+1})`` of the next moment given interior ``S_1..S_n``.

    Conventions for short prefixes: ``S^-_1 = 0``, ``S^+_1 = I`` and ``S^+_2 = S_1``.
    """
    S = as_matrix_sequence(S)
    if not is_interior_interval(S):
        raise NotInterior("moment vector is not interior")
    return _range_unchecked(S)


def _strictly_inside_unit_interval(U: np.ndarray, tol: float) -> bool:
    w = np.linalg.eigvalsh(U)
    return bool(np.all(w > tol) and np.all(w < 1.0 - tol))


def to_canonical_interval(S) -> np.ndarray:
    """Canonical moments ``U_k = D^{-1/2} (S_k - S^-_k) D^{-1/2}``, ``D = S^+_k - S^-_k``."""
    S = hermitian(as_matrix_sequence(S))
    if not is_interior_interval(S):
        raise NotInterior("moment vector is not interior")
    U = np.empty_like(S)
    for k in range(S.shape[0]):
        lo, hi = _range_unchecked(S[:k])
        _, isq = sqrt_and_inv_sqrt(hi - lo)
        U[k] = hermitian(isq @ (S[k] - lo) @ isq)
    return U


def from_canonical_interval(U, tol: float = TOL) -> np.ndarray:
    """Inverse of :func:`to_canonical_interval`."""
    U = hermitian(as_matrix_sequence(U))
    for k, Uk in enumerate(U):
        if not _strictly_inside_unit_interval(Uk, tol):
            raise NotInInterior(f"U_{k + 1} is not strictly between 0 and I")
    S = np.empty_like(U)
    for k in range(U.shape[0]):
        lo, hi = _range_unchecked(S[:k])
        sq, _ = sqrt_and_inv_sqrt(hi - lo)
        S[k] = hermitian(lo + sq @ U[k] @ sq)
    return S


def range_det_identity(U) -> float:
    """``prod_i det(U_i (I - U_i))``, the determinant of the next-moment range."""
    U = hermitian(as_matrix_sequence(U))
    w = np.linalg.eigvalsh(U)
    return float(np.prod(w * (1.0 - w)))


def moments_of_measure(mu, n: int) -> np.ndarray:
    """Power moments ``S_1..S_n`` of a matrix measure on [0, 1]."""
    j = np.arange(1, n + 1)
    if isinstance(mu, DiscreteMatrixMeasure):
        mu.check_normalized()
        powers = mu.locations[None, :] ** j[:, None]
        S = np.einsum("ja,akl->jkl", powers, mu.weights)
    elif isinstance(mu, DensityGridMeasure):
        mu.check_normalized()
        powers = mu.nodes[None, :] ** j[:, None] * mu.quad_weights[None, :]
        S = np.einsum("ja,akl->jkl", powers, mu.values)
        if mu.singular_mass is not None:
            sm = mu.singular_mass
            S = S + np.einsum("ja,akl->jkl", sm.locations[None, :] ** j[:, None], sm.weights)
    else:
        raise TypeError(f"unsupported measure type {type(mu).__name__}")
    return hermitian(S)


def _check_p(p: int | None, actual: int) -> int:
    if p is not None and p != actual:
        raise DimensionMismatch(f"p={p} but matrices are {actual}x{actual}")
    return actual


def rate_canonical_interval(U, p: int | None = None) -> float:
    """Rate of the first ``k`` canonical moments of a uniform random moment vector."""
    U = hermitian(as_matrix_sequence(U))
    p = _check_p(p, U.shape[-1])
    w = np.linalg.eigvalsh(U)
    if np.any(w <= 0.0) or np.any(w >= 1.0):
        return math.inf
    # 4w(1-w) rounds to exactly 1 near w = 1/2, so the minimizer gives exactly 0
    return float(-p * np.sum(np.log(4.0 * w * (1.0 - w))))


def rate_moments_interval(S, p: int | None = None) -> float:
    """Rate of the first ``k`` ordinary moments: ``-p log det(S+ - S-) - 2 k p^2 log 2``."""
    S = hermitian(as_matrix_sequence(S))
    p = _check_p(p, S.shape[-1])
    k = S.shape[0]
    if not is_interior_interval(S):
        return math.inf
    lo, hi = _range_unchecked(S)
    w = np.linalg.eigvalsh(hermitian(hi - lo))
    if np.any(w <= 0.0):
        return math.inf
    return float(-p * np.sum(np.log(w)) - 2 * k * p * p * LOG2)


def rate_measure_interval(mu: DensityGridMeasure | DiscreteMatrixMeasure) -> float:
    """``-p * integral log det W dnu_1`` on a Gauss-Chebyshev grid.

    ``mu.values`` is the density relative to the matrix arcsine law; any
    singular part is ignored because only the absolutely continuous part
    enters the rate.  A purely atomic measure therefore has rate ``inf``.
    """
    if isinstance(mu, DiscreteMatrixMeasure):
        return math.inf
    mu.require_nodes(8)
    w = np.linalg.eigvalsh(mu.values)
    if np.any(w <= 0.0):
        return math.inf
    logdet = np.sum(np.log(w), axis=-1)
    return float(-mu.p * np.dot(mu.quad_weights, logdet))


def interval_circle_bridge(U) -> np.ndarray:
    """``A_i = 2 U_i - I``: canonical moments of the associated symmetric circle measure."""
    U = hermitian(as_matrix_sequence(U))
    return 2.0 * U - np.eye(U.shape[-1])


def circle_interval_bridge(A) -> np.ndarray:
    """Inverse of :func:`interval_circle_bridge`."""
    A = hermitian(as_matrix_sequence(A))
    return 0.5 * (A + np.eye(A.shape[-1]))


def arcsine_moments(n: int, p: int = 1) -> np.ndarray:
    """Moments ``binom(2j, j) / 4^j`` of the arcsine law, embedded as multiples of ``I_p``."""
    s = [math.comb(2 * j, j) / 4.0**j for j in range(1, n + 1)]
    return np.array(s)[:, None, None] * np.eye(p)


# ---- scalar route through orthogonal-polynomial recurrences ----------------
#
# Floating-point moments lose the next-moment range after roughly a dozen
# steps (its width is at most 4^-k).  For scalar measures known through a
# quadrature rule, the canonical moments follow stably from the three-term
# recurrence  P_{k+1} = (x - a_k) P_k - b_k P_{k-1}  with
# a_k = z_{2k} + z_{2k+1},  b_k = z_{2k-1} z_{2k},  z_1 = u_1,  z_j = (1 - u_{j-1}) u_j.


def stieltjes_recurrence(nodes, weights, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Recurrence coefficients ``a_0..a_{m-1}``, ``b_1..b_{m-1}`` of a discrete measure."""
    x = np.asarray(nodes, dtype=float)
    w = np.asarray(weights, dtype=float)
    w = w / w.sum()
    a = np.empty(m)
    b = np.empty(max(m - 1, 0))
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    norm_prev = 1.0
    for k in range(m):
        norm = np.dot(w, cur * cur)
        a[k] = np.dot(w, x * cur * cur) / norm
        if k > 0:
            b[k - 1] = norm / norm_prev
        nxt = (x - a[k]) * cur - (b[k - 1] if k > 0 else 0.0) * prev
        # rescale (P_{k-1}, P_k) jointly to unit norm of P_k; a and b are scale-free
        s = math.sqrt(norm)
        prev, cur, norm_prev = cur / s, nxt / s, 1.0
    return a, b


def canonical_from_recurrence(a, b, n: int) -> np.ndarray:
    """Scalar canonical moments ``u_1..u_n`` from recurrence coefficients."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    z = np.zeros(n + 2)
    z[1] = a[0]
    for k in range(1, (n + 1) // 2 + 1):
        if 2 * k <= n:
            z[2 * k] = b[k - 1] / z[2 * k - 1]
        if 2 * k + 1 <= n:
            z[2 * k + 1] = a[k] - z[2 * k]
    u = np.empty(n)
    u[0] = z[1]
    for j in range(2, n + 1):
        u[j - 1] = z[j] / (1.0 - u[j - 2])
    return u


def scalar_canonical_from_quadrature(nodes, weights, n: int) -> np.ndarray:
    """Canonical moments ``u_1..u_n`` of the scalar measure ``sum_i w_i delta_{x_i}``.

    Accurate when the rule integrates polynomials of degree ``n + 1`` exactly
    against the target measure.
    """
    m = n // 2 + 1
    a, b = stieltjes_recurrence(nodes, weights, m)
    return canonical_from_recurrence(a, b, n)
