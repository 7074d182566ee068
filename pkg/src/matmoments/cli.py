"""Command-line entry point: ``transform``, ``sample``, ``schur`` and ``verify``.

Exit status is 0 on success, 1 when ``verify`` finds a failing statistic and 2
on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from . import circle, ensembles, harness, interval, io, schur
from .errors import MomentError

TRANSFORMS = {
    ("interval", "to-canonical"): ("interval-moments", "interval-canonical", interval.to_canonical_interval),
    ("interval", "from-canonical"): ("interval-canonical", "interval-moments", interval.from_canonical_interval),
    ("circle", "to-canonical"): ("trig-moments", "circle-canonical", circle.to_canonical_circle),
    ("circle", "from-canonical"): ("circle-canonical", "trig-moments", circle.from_canonical_circle),
}

SCHUR_INPUT_KINDS = ("schur-parameters", "circle-canonical", "trig-moments")


def _write_json(obj, out: TextIO) -> None:
    out.write(json.dumps(obj) + "\n")


def cmd_transform(args: argparse.Namespace, stdin: TextIO, stdout: TextIO) -> int:
    source, target, fn = TRANSFORMS[(args.space, args.direction)]
    _, items = io.vector_from_json(json.load(stdin), kinds=(source,))
    _write_json(io.vector_to_json(fn(items), target), stdout)
    return 0


def sample_params(args: argparse.Namespace) -> ensembles.EnsembleParams:
    """Shape parameters default to ``n`` for the Wishart and Beta ensembles."""
    if args.ensemble.startswith("canonical-"):
        return ensembles.EnsembleParams(args.p, n=args.n, k=args.k)
    if args.ensemble == "wishart":
        return ensembles.EnsembleParams(args.p, a=args.a if args.a is not None else float(args.n))
    if args.ensemble == "beta":
        a = args.a if args.a is not None else float(args.n)
        b = args.b if args.b is not None else float(args.n)
        return ensembles.EnsembleParams(args.p, a=a, b=b)
    return ensembles.EnsembleParams(args.p)


def cmd_sample(args: argparse.Namespace, stdin: TextIO, stdout: TextIO) -> int:
    if args.count < 0:
        raise MomentError("count must be non-negative")
    params = sample_params(args)
    stream = ensembles.RngStream(args.seed, args.stream)
    batch = ensembles.sample_batch(args.ensemble, params, args.count, stream, workers=args.workers)
    meta = {"ensemble": args.ensemble, **params.as_dict()}
    # canonical draws are vectors; they are flattened in order, k (or n) matrices per draw
    payload = io.batch_to_json(meta, args.seed, batch.draws.reshape(-1, args.p, args.p))
    text = json.dumps(payload) + "\n"
    if args.out in (None, "-"):
        stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def schur_parameters(kind: str, items: np.ndarray) -> np.ndarray:
    if kind == "schur-parameters":
        return items
    if kind == "circle-canonical":
        return schur.schur_params_from_canonical(items)
    return schur.schur_params_from_moments(items)


def cmd_schur(args: argparse.Namespace, stdin: TextIO, stdout: TextIO) -> int:
    with open(args.params) as fh:
        kind, items = io.vector_from_json(json.load(fh), kinds=SCHUR_INPUT_KINDS)
    alpha = schur_parameters(kind, items)
    p = alpha.shape[-1]
    if args.emit == "taylor":
        _write_json(io.vector_to_json(schur.schur_taylor_from_params(alpha), "schur-taylor"), stdout)
        return 0
    theta, f, W = schur.bernstein_szego_grids(alpha, args.grid)
    if args.emit == "boundary":
        _write_json(
            {
                "p": p,
                "kind": "schur-boundary",
                "theta": [float(t) for t in theta],
                "f": [io.matrix_to_json(m) for m in f],
                "W": [io.matrix_to_json(m) for m in W],
            },
            stdout,
        )
        return 0
    canonical = schur.canonical_from_schur_params(alpha)
    _write_json(
        {
            "p": p,
            "grid": args.grid,
            "rate_canonical_circle": circle.rate_canonical_circle(canonical),
            "rate_caratheodory": schur.rate_caratheodory(W),
            "rate_schur": schur.rate_schur(f),
        },
        stdout,
    )
    return 0


def cmd_verify(args: argparse.Namespace, stdin: TextIO, stdout: TextIO) -> int:
    cfg = harness.load_config(args.config) if args.config else harness.ExperimentConfig()
    cfg = cfg.with_overrides(experiments=harness.SUITES[args.suite], seed=args.seed)
    agg = harness.run_all(cfg, args.out)
    for r in agg.reports:
        status = "PASS" if r.passed else "FAIL"
        detail = "" if r.passed else "  failing: " + ", ".join(r.failures())
        stdout.write(f"{status} {r.experiment} p={r.params.get('p')} ({r.runtime:.1f}s){detail}\n")
    return 0 if agg.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matmoments", description="Matrix moment spaces on [0,1] and the unit circle.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="moments <-> canonical moments, JSON on stdin/stdout")
    t.add_argument("--space", choices=("interval", "circle"), required=True)
    t.add_argument("--direction", choices=("to-canonical", "from-canonical"), required=True)
    t.set_defaults(run=cmd_transform)

    s = sub.add_parser("sample", help="draw a batch from a matrix ensemble")
    s.add_argument("--ensemble", choices=ensembles.ENSEMBLES, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=1, help="vector length, or the default shape for wishart/beta")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", default="-")
    s.add_argument("--a", type=float)
    s.add_argument("--b", type=float)
    s.add_argument("--k", type=int, help="canonical ensembles: emit only the first k entries")
    s.add_argument("--stream", type=int, default=0, help="stream id combined with the seed")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(run=cmd_sample)

    c = sub.add_parser("schur", help="Schur function data from a parameter or moment vector")
    c.add_argument("--params", required=True)
    c.add_argument("--emit", choices=("taylor", "boundary", "rates"), required=True)
    c.add_argument("--grid", type=int, default=schur.DEFAULT_GRID)
    c.set_defaults(run=cmd_schur)

    v = sub.add_parser("verify", help="run the verification experiments")
    v.add_argument("--suite", choices=tuple(harness.SUITES), default="all")
    v.add_argument("--config")
    v.add_argument("--seed", type=int)
    v.add_argument("--out")
    v.set_defaults(run=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, stdin or sys.stdin, stdout or sys.stdout)
    except (MomentError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"matmoments {args.command}: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
