"""Complex square-matrix primitives.

Every function accepts a single ``(p, p)`` array and, where it is cheap to do
so, a stack ``(..., p, p)``; the decompositions below all go through
``numpy.linalg.eigh`` so stacked inputs cost nothing extra.

Degeneracy policy: a Hermitian matrix is positive semidefinite when its
smallest eigenvalue is ``>= -TOL * ||A||`` (spectral norm) and positive
definite when it is ``> TOL * ||A||``.  Eigenvalues in ``[-TOL*||A||, 0]`` are
clamped to zero.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DimensionMismatch, NotPsd, RankDeficient, Singular

TOL = 1e-10


class Loewner(enum.Enum):
    LESS_STRICT = "LessStrict"
    LESS_EQ = "LessEq"
    INCOMPARABLE = "Incomparable"


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def as_square(m, p: int | None = None) -> np.ndarray:
    """Validate and return ``m`` as a complex ``(..., p, p)`` array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(f"expected square matrices, got shape {a.shape}")
    if p is not None and a.shape[-1] != p:
        raise DimensionMismatch(f"expected p={p}, got {a.shape[-1]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def hermitian(m) -> np.ndarray:
    """Symmetrize ``(A + A*) / 2``; diagonal imaginary parts become exactly zero."""
    a = as_square(m)
    return 0.5 * (a + dagger(a))


def eye_like(a: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.eye(a.shape[-1], dtype=complex), a.shape).copy()


def _eigh_psd(a: np.ndarray, *, strict: bool):
    w, v = np.linalg.eigh(hermitian(a))
    scale = np.max(np.abs(w), axis=-1, keepdims=True)
    floor = TOL * scale
    if strict:
        if np.any(w <= floor) or np.any(scale == 0):
            raise Singular("matrix is not positive definite")
    elif np.any(w < -floor):
        raise NotPsd(f"smallest eigenvalue {np.min(w):.3e} below -tol*||A||")
    return np.clip(w, 0.0, None), v


def min_eigenvalue(m) -> float | np.ndarray:
    return np.linalg.eigvalsh(hermitian(m))[..., 0]


def is_psd(m) -> bool:
    w = np.linalg.eigvalsh(hermitian(m))
    scale = np.max(np.abs(w), axis=-1)
    return bool(np.all(w[..., 0] >= -TOL * scale))


def is_pd(m) -> bool:
    w = np.linalg.eigvalsh(hermitian(m))
    scale = np.max(np.abs(w), axis=-1)
    return bool(np.all((scale > 0) & (w[..., 0] > TOL * scale)))


def as_psd(m) -> np.ndarray:
    """Project onto the PSD cone after checking the tolerance (clamps tiny negatives)."""
    w, v = _eigh_psd(np.asarray(m), strict=False)
    return (v * w[..., None, :]) @ dagger(v)


def hermitian_sqrt(m) -> np.ndarray:
    """Unique PSD square root of a PSD matrix."""
    w, v = _eigh_psd(np.asarray(m), strict=False)
    return (v * np.sqrt(w)[..., None, :]) @ dagger(v)


def inv_sqrt(m) -> np.ndarray:
    """``A^{-1/2}`` for positive definite ``A``; raises :class:`Singular` otherwise."""
    w, v = _eigh_psd(np.asarray(m), strict=True)
    return (v / np.sqrt(w)[..., None, :]) @ dagger(v)


def sqrt_and_inv_sqrt(m) -> tuple[np.ndarray, np.ndarray]:
    w, v = _eigh_psd(np.asarray(m), strict=True)
    s = np.sqrt(w)[..., None, :]
    vh = dagger(v)
    return (v * s) @ vh, (v / s) @ vh


def loewner_compare(a, b) -> Loewner:
    a = hermitian(a)
    b = hermitian(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    d = b - a
    w = np.linalg.eigvalsh(d)
    scale = max(np.linalg.norm(a, 2), np.linalg.norm(b, 2), 1e-300)
    if w[0] > TOL * scale:
        return Loewner.LESS_STRICT
    if w[0] >= -TOL * scale:
        return Loewner.LESS_EQ
    return Loewner.INCOMPARABLE


def log_det(m) -> float | np.ndarray:
    """``log det A`` through the Cholesky diagonal; :class:`Singular` unless PD."""
    a = hermitian(m)
    try:
        c = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise Singular("matrix is not positive definite") from exc
    d = np.real(np.diagonal(c, axis1=-2, axis2=-1))
    if np.any(d <= 0):
        raise Singular("matrix is not positive definite")
    return 2.0 * np.sum(np.log(d), axis=-1)


def log_det_or_inf(m) -> float:
    """``log det`` that returns ``-inf`` for singular input; used by rate functions."""
    try:
        return float(log_det(m))
    except Singular:
        return -np.inf


def frobenius_norm(m) -> float | np.ndarray:
    a = np.asarray(m, dtype=complex)
    return np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))


def singular_values(m) -> np.ndarray:
    """Singular values (ascending) from the eigenvalues of ``M* M``."""
    a = as_square(m)
    w = np.linalg.eigvalsh(dagger(a) @ a)
    return np.sqrt(np.clip(w, 0.0, None))


def is_strict_contraction(m, tol: float = TOL) -> bool:
    """Largest singular value ``< 1 - tol`` (interior of the unit operator ball)."""
    return bool(np.all(singular_values(m)[..., -1] < 1.0 - tol))


def is_contraction(m, tol: float = TOL) -> bool:
    """Closed-ball companion of :func:`is_strict_contraction`."""
    return bool(np.all(singular_values(m)[..., -1] <= 1.0 + tol))


def polar_decompose(m) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(U, H)`` with ``H = M* M`` and ``U = M H^{-1/2}`` unitary."""
    a = as_square(m)
    h = hermitian(dagger(a) @ a)
    w, v = np.linalg.eigh(h)
    top = w[..., -1]
    # singular values are sqrt(w): smallest must exceed TOL * largest
    if np.any(w[..., 0] <= TOL**2 * top) or np.any(top == 0):
        raise RankDeficient("polar decomposition needs a full-rank matrix")
    isq = (v / np.sqrt(w)[..., None, :]) @ dagger(v)
    return a @ isq, h
