"""Desk-scale experiments: CLT moment matching, LDP density scaling, rate monotonicity, Szego checks.

Each experiment returns an :class:`ExperimentReport` listing every statistic
with its target, acceptance threshold and decision.  Monte Carlo thresholds are
three standard errors computed from the sample itself.
"""

from __future__ import annotations

import csv
import json
import math
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

import numpy as np
import scipy.special

from . import circle, ensembles, interval, schur
from .errors import ConfigError
from .measures import DensityGridMeasure

SIGMA = 3.0


# ---- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class Statistic:
    name: str
    observed: float
    target: float
    threshold: float
    n: int | None = None

    @property
    def gap(self) -> float:
        return abs(self.observed - self.target)

    @property
    def passed(self) -> bool:
        return bool(self.gap <= self.threshold)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "observed": self.observed,
            "target": self.target,
            "gap": self.gap,
            "threshold": self.threshold,
            "passed": self.passed,
        }


@dataclass
class ExperimentReport:
    experiment: str
    params: dict
    statistics: list[Statistic] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.statistics) and all(self.checks.values())

    def failures(self) -> list[str]:
        out = [s.name for s in self.statistics if not s.passed]
        return out + [k for k, ok in self.checks.items() if not ok]

    def as_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "params": self.params,
            "passed": self.passed,
            "checks": self.checks,
            "statistics": [s.as_dict() for s in self.statistics],
            "timing": {"seconds": self.runtime},
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def csv_rows(self) -> list[tuple]:
        return [
            (self.experiment, s.n if s.n is not None else "", s.name, repr(s.observed), repr(s.target), repr(s.gap))
            for s in self.statistics
        ]


def _timed(fn: Callable[..., ExperimentReport]) -> Callable[..., ExperimentReport]:
    def wrapper(*args, **kwargs) -> ExperimentReport:
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.runtime = time.perf_counter() - start
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---- configuration ----------------------------------------------------------------


EXPERIMENTS = (
    "clt_beta_gue",
    "clt_beta_wishart",
    "clt_wishart_gue",
    "clt_trig_ginibre",
    "ldp_density_scaling",
    "measure_rate_monotonicity",
    "szego_consistency",
)

SUITES = {
    "clt": ("clt_beta_gue", "clt_beta_wishart", "clt_wishart_gue", "clt_trig_ginibre"),
    "ldp": ("ldp_density_scaling",),
    "measure": ("measure_rate_monotonicity",),
    "szego": ("szego_consistency",),
    "all": EXPERIMENTS,
}

STATISTICAL = set(SUITES["clt"])


@dataclass(frozen=True)
class ExperimentConfig:
    experiments: tuple[str, ...] = EXPERIMENTS
    p: tuple[int, ...] = (1, 2, 3)
    n: int = 4096
    k: int = 2
    samples: int = 100_000
    seed: int = 20261016
    c: float | None = None
    ldp_exponents: tuple[int, ...] = tuple(range(6, 13))
    measure_k: int = 64
    grid: int = 512
    workers: int = 1
    output: str | None = None

    def __post_init__(self):
        for e in self.experiments:
            if e not in EXPERIMENTS:
                raise ConfigError(f"unknown experiment {e!r}")
        if not self.p or any(q < 1 for q in self.p):
            raise ConfigError("p must be a list of positive integers")
        if self.n < 1 or self.k < 1:
            raise ConfigError("n and k must be positive")
        if self.k > self.n:
            raise ConfigError("k must not exceed n")
        if any(e in STATISTICAL for e in self.experiments) and self.samples < 1000:
            raise ConfigError("statistical experiments need at least 1000 samples")
        if self.workers < 1:
            raise ConfigError("workers must be positive")

    def with_overrides(self, **kw) -> "ExperimentConfig":
        data = {f: getattr(self, f) for f in self.__dataclass_fields__}
        data.update({k: v for k, v in kw.items() if v is not None})
        return ExperimentConfig(**data)


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


_PARSERS: dict[str, Callable[[str], object]] = {
    "experiments": lambda t: tuple(x.strip() for x in t.split(",") if x.strip()),
    "suite": lambda t: SUITES[t.strip()],
    "p": _int_list,
    "n": int,
    "k": int,
    "samples": int,
    "seed": int,
    "c": float,
    "ldp_exponents": _int_list,
    "measure_k": int,
    "grid": int,
    "workers": int,
    "output": str,
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            parsed = _PARSERS[key](value)
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}") from exc
        values["experiments" if key == "suite" else key] = parsed
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    return parse_config(text)


def _stream(cfg: ExperimentConfig, name: str, p: int) -> ensembles.RngStream:
    return ensembles.RngStream(cfg.seed, zlib.crc32(f"{name}/{p}".encode()))


# ---- Monte Carlo helpers ------------------------------------------------------------


def mean_statistic(name: str, x: np.ndarray, target: float) -> Statistic:
    x = np.asarray(x, dtype=float)
    se = x.std(ddof=1) / math.sqrt(x.size)
    return Statistic(name, float(x.mean()), target, SIGMA * se)


def variance_statistic(name: str, x: np.ndarray, target: float) -> Statistic:
    """Sample variance with the standard error ``sqrt((m4 - s^4) / N)``."""
    x = np.asarray(x, dtype=float)
    d = x - x.mean()
    s2 = float(np.mean(d * d))
    m4 = float(np.mean(d**4))
    se = math.sqrt(max(m4 - s2 * s2, 0.0) / x.size)
    return Statistic(name, float(x.var(ddof=1)), target, SIGMA * se)


def covariance_statistic(name: str, x: np.ndarray, y: np.ndarray, target: float = 0.0) -> Statistic:
    x = np.asarray(x, dtype=float) - np.mean(x)
    y = np.asarray(y, dtype=float) - np.mean(y)
    prod = x * y
    se = prod.std(ddof=1) / math.sqrt(x.size)
    return Statistic(name, float(prod.mean()), target, SIGMA * se)


def entry_statistics(
    prefix: str,
    Y: np.ndarray,
    diag_var: float | None,
    off_var: float,
    diag_mean: float = 0.0,
    hermitian_input: bool = True,
) -> list[Statistic]:
    """Mean and variance checks for each entry of a stack ``(N, p, p)``."""
    p = Y.shape[-1]
    out: list[Statistic] = []
    for i in range(p):
        for j in range(p):
            if hermitian_input and j < i:
                continue
            z = Y[:, i, j]
            if hermitian_input and i == j:
                out.append(mean_statistic(f"{prefix}[{i},{i}].mean", z.real, diag_mean))
                if diag_var is not None:
                    out.append(variance_statistic(f"{prefix}[{i},{i}].var", z.real, diag_var))
                continue
            for part, vals in (("re", z.real), ("im", z.imag)):
                out.append(mean_statistic(f"{prefix}[{i},{j}].{part}.mean", vals, 0.0))
                out.append(variance_statistic(f"{prefix}[{i},{j}].{part}.var", vals, off_var))
    return out


def _draws(cfg: ExperimentConfig, name: str, ensemble: str, params: ensembles.EnsembleParams) -> np.ndarray:
    batch = ensembles.sample_batch(ensemble, params, cfg.samples, _stream(cfg, name, params.p), workers=cfg.workers)
    return batch.draws


# ---- CLT experiments ---------------------------------------------------------------


@_timed
def clt_beta_gue_check(cfg: ExperimentConfig, p: int) -> ExperimentReport:
    """``sqrt(8 a_n) (X - I/2)`` for ``X ~ Beta_p(a_n, a_n)`` against GUE entry moments."""
    a = float(cfg.n)
    X = _draws(cfg, "clt_beta_gue", "beta", ensembles.EnsembleParams(p, a, a))
    Y = math.sqrt(8 * a) * (X - 0.5 * np.eye(p))
    rep = ExperimentReport("clt_beta_gue", {"p": p, "a_n": a, "samples": cfg.samples})
    rep.statistics += entry_statistics("Y", Y, 1.0, 0.5)
    rep.statistics.append(variance_statistic("trace.var", np.trace(Y, axis1=1, axis2=2).real, float(p)))
    return rep


@_timed
def clt_beta_wishart_check(cfg: ExperimentConfig, p: int) -> ExperimentReport:
    """``a_n X`` for ``X ~ Beta_p(c, a_n)`` against ``W_p(c)`` moments."""
    c = cfg.c if cfg.c is not None else float(p)
    if not c > p - 1:
        raise ConfigError(f"c={c} must exceed p-1")
    a = float(cfg.n)
    X = _draws(cfg, "clt_beta_wishart", "beta", ensembles.EnsembleParams(p, c, a))
    Y = a * X
    rep = ExperimentReport("clt_beta_wishart", {"p": p, "c": c, "a_n": a, "samples": cfg.samples})
    # W_p(c): diagonal entries have mean c and variance c, off-diagonal parts variance c/2
    rep.statistics += entry_statistics("aX", Y, c, c / 2, diag_mean=c)
    rep.checks["eigenvalues_nonnegative"] = bool(np.all(np.linalg.eigvalsh(Y) >= -1e-9 * a))
    return rep


@_timed
def clt_wishart_gue_check(cfg: ExperimentConfig, p: int) -> ExperimentReport:
    """``W ~ W_p(a_n)``: ``W / a_n -> I`` and ``(W - a_n I) / sqrt(a_n)`` against GUE."""
    a = float(cfg.n)
    W = _draws(cfg, "clt_wishart_gue", "wishart", ensembles.EnsembleParams(p, a))
    rep = ExperimentReport("clt_wishart_gue", {"p": p, "a_n": a, "samples": cfg.samples})
    Y = (W - a * np.eye(p)) / math.sqrt(a)
    rep.statistics += entry_statistics("Y", Y, 1.0, 0.5)
    lln = np.linalg.norm(W / a - np.eye(p), axis=(1, 2)).mean()
    # E||W/a - I||_F^2 = p^2 / a, so the mean distance is at most p / sqrt(a)
    rep.statistics.append(Statistic("lln.frobenius", float(lln), 0.0, p / math.sqrt(a)))
    return rep


@_timed
def clt_trig_ginibre_check(cfg: ExperimentConfig, p: int) -> ExperimentReport:
    """``sqrt(2pn) A_j`` and ``sqrt(2pn) Gamma_j`` against standard complex Gaussian entries."""
    n, k = cfg.n, min(cfg.k, 3)
    A = _draws(cfg, "clt_trig_ginibre", "canonical-circle", ensembles.EnsembleParams(p, n=n, k=k))
    G = circle.from_canonical_circle(A)
    scale = math.sqrt(2 * p * n)
    rep = ExperimentReport("clt_trig_ginibre", {"p": p, "n": n, "k": k, "samples": cfg.samples})
    for j in range(k):
        rep.statistics += entry_statistics(f"A{j + 1}", scale * A[:, j], None, 0.5, hermitian_input=False)
        rep.statistics += entry_statistics(f"Gamma{j + 1}", scale * G[:, j], None, 0.5, hermitian_input=False)
    if k >= 2:
        x = scale * A[:, 0, 0, 0]
        y = scale * A[:, 1, 0, 0]
        rep.statistics.append(covariance_statistic("cov(A1[0,0].re,A2[0,0].re)", x.real, y.real))
        rep.statistics.append(covariance_statistic("cov(A1[0,0].im,A2[0,0].im)", x.imag, y.imag))
    diff = scale * np.linalg.norm((G - A).reshape(cfg.samples, -1), axis=1).mean()
    rep.params["mean_scaled_gamma_minus_a"] = float(diff)
    return rep


# ---- LDP density scaling ---------------------------------------------------------------


def _ldp_points(p: int) -> tuple[np.ndarray, np.ndarray]:
    B = np.diag([0.25, 0.5, 0.75][:p]) if p <= 3 else np.diag(np.linspace(0.2, 0.8, p))
    A = np.diag([0.3, 0.5j, -0.2][:p]) if p <= 3 else np.diag(np.linspace(-0.4, 0.4, p))
    return B, A


def ldp_gaps(p: int, exponents: Iterable[int], a: float = 1.0, k: int = 1) -> dict[str, list[tuple[int, float, float]]]:
    """``(n, -(1/n) log density, rate)`` rows for the symmetric, asymmetric and circle laws."""
    B, A = _ldp_points(p)
    c = float(p)
    eye = np.eye(p)
    circle_rate = -2 * p * float(np.sum(np.log(np.linalg.eigvalsh(eye - A.conj().T @ A))))
    rows: dict[str, list[tuple[int, float, float]]] = {"beta_symmetric": [], "beta_asymmetric": [], "circle": []}
    for e in exponents:
        n = 2**e
        rows["beta_symmetric"].append(
            (n, -ensembles.log_density_beta(p, a * n, a * n, B) / n, ensembles.beta_rate_symmetric(B, a))
        )
        rows["beta_asymmetric"].append(
            (n, -ensembles.log_density_beta(p, c, a * n, B) / n, ensembles.beta_rate_asymmetric(B, a))
        )
        rows["circle"].append((n, -ensembles.log_density_canonical_circle(A, n, k) / n, circle_rate))
    return rows


@_timed
def ldp_density_scaling_check(cfg: ExperimentConfig, p: int) -> ExperimentReport:
    """Gap between ``-(1/n) log density_n`` and the rate, at ``n = 2^6 .. 2^12``."""
    rep = ExperimentReport("ldp_density_scaling", {"p": p, "exponents": list(cfg.ldp_exponents)})
    final_n = 2 ** max(cfg.ldp_exponents)
    for law, rows in ldp_gaps(p, cfg.ldp_exponents).items():
        gaps = []
        for n, obs, target in rows:
            threshold = 0.01 if n == final_n else math.inf
            rep.statistics.append(Statistic(f"{law}.gap", obs, target, threshold, n=n))
            gaps.append((n, abs(obs - target)))
        tail = [g for n, g in gaps if n >= 256]
        rep.checks[f"{law}.monotone_from_256"] = all(x > y for x, y in zip(tail, tail[1:]))
    return rep


# ---- measure-level rate monotonicity ------------------------------------------------------


def jacobi_rate_limit(alpha: float, beta: float) -> float:
    """Measure-level rate of the law ``x^alpha (1-x)^beta / B(alpha+1, beta+1)`` on [0, 1]."""
    return (
        float(scipy.special.betaln(alpha + 1, beta + 1))
        - math.log(math.pi)
        + 2 * (alpha + beta + 1) * math.log(2.0)
    )


def jacobi_canonical(alpha: float, beta: float, k: int, nodes: int | None = None) -> np.ndarray:
    """Canonical moments ``u_1..u_k`` of a Jacobi law by Gauss-Jacobi quadrature."""
    nodes = nodes or k + 8
    t, w = scipy.special.roots_jacobi(nodes, beta, alpha)
    return interval.scalar_canonical_from_quadrature((1.0 + t) / 2.0, w, k)


def jacobi_grid_measure(alpha: float, beta: float, p_blocks: int = 1, n_nodes: int = 4096) -> DensityGridMeasure:
    norm = math.exp(float(scipy.special.betaln(alpha + 1, beta + 1)))

    def w(x: float) -> float:
        return math.pi * x ** (alpha + 0.5) * (1 - x) ** (beta + 0.5) / norm

    return DensityGridMeasure.arcsine_grid(w, p_blocks, n_nodes)


def _block_grid(blocks: list[tuple[float, float]], n_nodes: int) -> DensityGridMeasure:
    grids = [jacobi_grid_measure(al, be, n_nodes=n_nodes) for al, be in blocks]
    vals = np.zeros((n_nodes, len(blocks), len(blocks)))
    for i, g in enumerate(grids):
        vals[:, i, i] = g.values[:, 0, 0].real
    return DensityGridMeasure(grids[0].nodes, vals, grids[0].quad_weights)


MEASURE_FAMILY = {"arcsine": (-0.5, -0.5), "uniform": (0.0, 0.0), "jacobi(1,0)": (1.0, 0.0)}


@_timed
def measure_rate_monotonicity_check(cfg: ExperimentConfig, p: int) -> ExperimentReport:
    """Partial rates ``k -> rate(U_1..U_k)`` increase to the measure-level rate.

    ``p = 1`` runs each scalar law; ``p >= 2`` embeds the laws block-diagonally
    (cycling through the family), for which every rate is ``p`` times the sum of
    the scalar rates of the blocks.
    """
    K = cfg.measure_k
    rep = ExperimentReport("measure_rate_monotonicity", {"p": p, "k_max": K})
    names = list(MEASURE_FAMILY)
    if p == 1:
        cases = [(name, [MEASURE_FAMILY[name]]) for name in names]
    else:
        blocks = [MEASURE_FAMILY[names[(i + 1) % len(names)]] for i in range(p)]
        cases = [("block-diagonal", blocks)]
    for label, blocks in cases:
        U = np.zeros((K, p, p))
        for i, (al, be) in enumerate(blocks):
            U[:, i, i] = jacobi_canonical(al, be, K)
        partial = np.array([interval.rate_canonical_interval(U[:k]) for k in range(1, K + 1)])
        limit = p * sum(jacobi_rate_limit(al, be) for al, be in blocks)
        rep.checks[f"{label}.nondecreasing"] = bool(np.all(np.diff(partial) >= -1e-12))
        for k in (1, 2, 4, 8, 16, 32, 64):
            if k <= K:
                thr = 1e-3 if k == K else math.inf
                rep.statistics.append(Statistic(f"{label}.partial_rate", float(partial[k - 1]), limit, thr, n=k))
        # quadrature value of the measure-level rate against the closed form; the
        # endpoint log singularity gives an O(1/N) error, removed by one Richardson step
        quad = [interval.rate_measure_interval(_block_grid(blocks, n)) for n in (2048, 4096)]
        rep.statistics.append(
            Statistic(f"{label}.measure_rate_quadrature", 2 * quad[1] - quad[0], limit, 1e-6, n=4096)
        )
        # the ordinary-moment route agrees with the canonical route while moments stay well conditioned
        kk = min(K, 8)
        S = interval.from_canonical_interval(U[:kk])
        rep.statistics.append(
            Statistic(
                f"{label}.moment_route_k{kk}",
                interval.rate_moments_interval(S),
                float(partial[kk - 1]),
                1e-6,
                n=kk,
            )
        )
    return rep


# ---- Szego triple identity ------------------------------------------------------------------


def szego_corpus(p: int, seed: int, count: int = 20) -> list[tuple[str, np.ndarray]]:
    rng = np.random.default_rng([seed, p])
    out: list[tuple[str, np.ndarray]] = [("zero", np.zeros((3, p, p), dtype=complex))]
    if p == 1:
        out.append(("half", np.array([[[0.5]], [[0.0]]], dtype=complex)))
    for i in range(count):
        n = int(rng.integers(1, 6))
        if p == 2 and i % 2 == 0:
            A = np.zeros((n, 2, 2), dtype=complex)
            A[:, 0, 0] = _random_disc(rng, n)
            A[:, 1, 1] = _random_disc(rng, n)
            out.append((f"block-diagonal-{i}", A))
            continue
        X = rng.normal(size=(n, p, p)) + 1j * rng.normal(size=(n, p, p))
        s = np.linalg.norm(X, 2, axis=(1, 2))
        out.append((f"random-{i}", X / s[:, None, None] * rng.uniform(0.05, 0.8, size=(n, 1, 1))))
    return out


def _random_disc(rng: np.random.Generator, n: int) -> np.ndarray:
    r = np.sqrt(rng.uniform(0.0, 0.64, n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


SZEGO_MAX_GRID = 1 << 16
SZEGO_GRID_TOL = 1e-10


def refined_szego_triple(A: np.ndarray, start: int) -> tuple[schur.TripleIdentity, int]:
    """Double the grid until the density-route value moves by less than ``SZEGO_GRID_TOL``.

    Both grid routes are trapezoid rules on rational integrands, so they converge
    geometrically at a rate set by the pole nearest the unit circle.
    """
    n = start
    prev = None
    while True:
        theta, f, W = schur.bernstein_szego_grids(A, n)
        t = schur.szego_triple_identity(A, W, f, theta)
        if prev is not None and abs(t.density - prev.density) < SZEGO_GRID_TOL:
            return t, n
        if n >= SZEGO_MAX_GRID:
            return t, n
        prev, n = t, 2 * n


@_timed
def szego_consistency_check(cfg: ExperimentConfig, p: int) -> ExperimentReport:
    """Pairwise gaps of the Szego triple on Bernstein-Szego instances, threshold 1e-6."""
    rep = ExperimentReport("szego_consistency", {"p": p, "grid": cfg.grid})
    for label, A in szego_corpus(p, cfg.seed):
        t, n = refined_szego_triple(A, cfg.grid)
        rep.statistics.append(Statistic(f"{label}.max_gap", t.max_gap, 0.0, 1e-6, n=n))
    return rep


# ---- orchestration ---------------------------------------------------------------------------


RUNNERS: dict[str, Callable[[ExperimentConfig, int], ExperimentReport]] = {
    "clt_beta_gue": clt_beta_gue_check,
    "clt_beta_wishart": clt_beta_wishart_check,
    "clt_wishart_gue": clt_wishart_gue_check,
    "clt_trig_ginibre": clt_trig_ginibre_check,
    "ldp_density_scaling": ldp_density_scaling_check,
    "measure_rate_monotonicity": measure_rate_monotonicity_check,
    "szego_consistency": szego_consistency_check,
}


@dataclass
class AggregateReport:
    reports: list[ExperimentReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "experiments": [
                {"experiment": r.experiment, "p": r.params.get("p"), "passed": r.passed, "failures": r.failures()}
                for r in self.reports
            ],
        }


def run_all(cfg: ExperimentConfig, out_dir: str | Path | None = None) -> AggregateReport:
    """Run the configured experiments for every ``p``; optionally write JSON and CSV artifacts."""
    jobs = [(name, p) for name in cfg.experiments for p in cfg.p]

    def run(job: tuple[str, int]) -> ExperimentReport:
        name, p = job
        return RUNNERS[name](cfg, p)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            reports = list(pool.map(run, jobs))
    else:
        reports = [run(job) for job in jobs]
    agg = AggregateReport(reports)
    out_dir = out_dir if out_dir is not None else cfg.output
    if out_dir is not None:
        write_artifacts(agg, Path(out_dir))
    return agg


def write_artifacts(agg: AggregateReport, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for r in agg.reports:
        (out_dir / f"{r.experiment}_p{r.params['p']}.json").write_text(r.to_json() + "\n")
    (out_dir / "summary.json").write_text(json.dumps(agg.as_dict(), indent=2, sort_keys=True) + "\n")
    with open(out_dir / "convergence.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["experiment", "n", "statistic", "observed", "target", "gap"])
        for r in agg.reports:
            w.writerows(r.csv_rows())


__all__ = [
    "Statistic",
    "ExperimentReport",
    "ExperimentConfig",
    "AggregateReport",
    "EXPERIMENTS",
    "SUITES",
    "parse_config",
    "load_config",
    "clt_beta_gue_check",
    "clt_beta_wishart_check",
    "clt_wishart_gue_check",
    "clt_trig_ginibre_check",
    "ldp_density_scaling_check",
    "measure_rate_monotonicity_check",
    "szego_consistency_check",
    "refined_szego_triple",
    "ldp_gaps",
    "jacobi_rate_limit",
    "jacobi_canonical",
    "run_all",
    "write_artifacts",
]
