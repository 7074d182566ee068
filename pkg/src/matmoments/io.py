"""JSON encodings for matrices, matrix vectors and sample batches.

Matrices are ``{"p": int, "re": [[...]], "im": [[...]]}`` row-major.  Floats are
written with 17 significant digits (``repr`` of a float), which round-trips
IEEE doubles exactly.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

import numpy as np

from .errors import BadShape, DimensionMismatch

VECTOR_KINDS = (
    "interval-moments",
    "interval-canonical",
    "trig-moments",
    "circle-canonical",
    "schur-taylor",
    "schur-parameters",
)


def _rows(a: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in a]


def matrix_to_json(m) -> dict[str, Any]:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise BadShape(f"expected a square matrix, got shape {a.shape}")
    return {"p": int(a.shape[0]), "re": _rows(a.real), "im": _rows(np.imag(a))}


def matrix_from_json(obj: dict[str, Any]) -> np.ndarray:
    try:
        p = int(obj["p"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros((p, p))), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadShape(f"malformed matrix object: {exc}") from exc
    if re.shape != (p, p) or im.shape != (p, p):
        raise DimensionMismatch(f"matrix entries do not match p={p}")
    return re + 1j * im


def vector_to_json(items: Iterable, kind: str) -> dict[str, Any]:
    if kind not in VECTOR_KINDS:
        raise ValueError(f"unknown vector kind {kind!r}")
    mats = [matrix_to_json(m) for m in items]
    p = mats[0]["p"] if mats else 0
    return {"p": p, "kind": kind, "items": mats}


def vector_from_json(obj: dict[str, Any], kinds: Iterable[str] | None = None) -> tuple[str, np.ndarray]:
    """Return ``(kind, array of shape (n, p, p))``; ``kinds`` restricts the accepted kinds."""
    try:
        kind = obj["kind"]
        p = int(obj["p"])
        items = obj["items"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BadShape(f"malformed vector object: {exc}") from exc
    allowed = tuple(kinds) if kinds is not None else VECTOR_KINDS
    if kind not in allowed:
        raise ValueError(f"vector kind {kind!r} not accepted here; expected one of {allowed}")
    mats = [matrix_from_json(m) for m in items]
    if any(m.shape != (p, p) for m in mats):
        raise DimensionMismatch(f"item sizes do not match p={p}")
    return kind, np.asarray(mats, dtype=complex).reshape(len(mats), p, p)


def batch_to_json(params: dict[str, Any], seed: int, draws: np.ndarray) -> dict[str, Any]:
    return {"params": dict(params), "seed": int(seed), "draws": [matrix_to_json(d) for d in draws]}


def batch_from_json(obj: dict[str, Any]) -> tuple[dict[str, Any], int, np.ndarray]:
    try:
        params, seed, draws = obj["params"], int(obj["seed"]), obj["draws"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BadShape(f"malformed batch object: {exc}") from exc
    mats = [matrix_from_json(d) for d in draws]
    p = int(params.get("p", mats[0].shape[0] if mats else 0))
    return params, seed, np.asarray(mats, dtype=complex).reshape(len(mats), p, p)


def dumps(obj: Any) -> str:
    return json.dumps(obj, allow_nan=True)


def loads(text: str) -> Any:
    return json.loads(text)


__all__ = [
    "VECTOR_KINDS",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
    "vector_from_json",
    "batch_to_json",
    "batch_from_json",
    "dumps",
    "loads",
]
