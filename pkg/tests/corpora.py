"""Random interior points shared by the acceptance and property tests."""

from __future__ import annotations

import numpy as np

CORPUS_SEED = 20261016
POINTS_PER_P = 500
P_VALUES = (1, 2, 3, 4)
INTERVAL_MAX_N = 12
CIRCLE_MAX_N = 10


def random_unitary(rng: np.random.Generator, p: int) -> np.ndarray:
    z = rng.normal(size=(p, p)) + 1j * rng.normal(size=(p, p))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def interval_canonical_point(rng: np.random.Generator, n: int, p: int, lo: float = 0.05, hi: float = 0.95) -> np.ndarray:
    """``U_k = V diag(u) V^*`` with ``u`` uniform on ``[lo, hi]`` and ``V`` Haar."""
    out = np.empty((n, p, p), dtype=complex)
    for k in range(n):
        v = random_unitary(rng, p)
        out[k] = (v * rng.uniform(lo, hi, p)) @ v.conj().T
    return out


def circle_canonical_point(rng: np.random.Generator, n: int, p: int, smax: float = 0.95) -> np.ndarray:
    """``A_k = V diag(s) W^*`` with singular values uniform on ``[0, smax]``."""
    out = np.empty((n, p, p), dtype=complex)
    for k in range(n):
        v, w = random_unitary(rng, p), random_unitary(rng, p)
        out[k] = (v * rng.uniform(0.0, smax, p)) @ w.conj().T
    return out


def interval_corpus(p: int, count: int = POINTS_PER_P, max_n: int = INTERVAL_MAX_N, seed: int = CORPUS_SEED):
    rng = np.random.default_rng([seed, 1, p])
    return [interval_canonical_point(rng, 1 + i % max_n, p) for i in range(count)]


def circle_corpus(p: int, count: int = POINTS_PER_P, max_n: int = CIRCLE_MAX_N, seed: int = CORPUS_SEED):
    rng = np.random.default_rng([seed, 2, p])
    return [circle_canonical_point(rng, 1 + i % max_n, p) for i in range(count)]


def random_pd(rng: np.random.Generator, p: int) -> np.ndarray:
    x = rng.normal(size=(p, p)) + 1j * rng.normal(size=(p, p))
    return x @ x.conj().T + 0.1 * np.eye(p)
