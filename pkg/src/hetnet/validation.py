"""Executable checks: closed forms against oracles, simulation against theory.

Each check returns a :class:`CheckResult`; ``run_all`` drives the whole
suite for the ``validate`` subcommand.
"""

from __future__ import annotations

import itertools
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from . import analytics
from .config import RunConfig, SweepSpec
from .geometry import CellGeometry, f1_cdf, nearest_macro_distances, sample_user_positions
from .montecarlo import conditional_success_mc, estimate_coverage
from .radio import SystemParams
from .stochastic import derive_stream, sample_nearest_pico_distance
from .sweep import emit_csv, run_sweep

BASELINE = SystemParams()
OFFSET_DB = tuple(range(0, 41, 2))
PICO_SCALES = (0.5, 1.0, 2.0, 4.0)
CONDITIONAL_RADII = (1.0, 3.0, 5.0, 8.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def oracle_grid(base: SystemParams = BASELINE):
    """The 81 parameter points used for closed-form/oracle equivalence."""
    for alpha, delta, l2_scale, t in itertools.product(
        (2.5, 3.0, 4.0), (1.0, 100.0, 1e4), (0.25, 1.0, 4.0), (0.1, 1.0, 10.0)
    ):
        yield base.replace(alpha=alpha, delta=delta, lambda2=base.lambda2 * l2_scale, t1=t, t2=t)


def check_oracle_equivalence(tol: float = 1e-6) -> CheckResult:
    worst_m = worst_p = worst_literal = 0.0
    bounded = True
    for p in oracle_grid():
        m_c, m_n = analytics.p_msuc_closed(p), analytics.p_msuc_numeric(p)
        p_c, p_n = analytics.p_psuc_closed(p), analytics.p_psuc_numeric(p)
        worst_m = max(worst_m, abs(m_c - m_n))
        worst_p = max(worst_p, abs(p_c - p_n))
        worst_literal = max(worst_literal, abs(analytics.p_psuc_closed(p, literal=True) - p_n))
        bounded &= m_c >= -tol and p_c >= -tol and m_c + p_c <= 1 + 1e-9
    ok = worst_m <= tol and worst_p <= tol and bounded
    return CheckResult(
        "closed form vs quadrature oracle (81 points)",
        ok,
        f"max|dP_msuc|={worst_m:.3g}, max|dP_psuc|={worst_p:.3g} (tol {tol:g}); "
        f"pico form with the literal residual sign is off by up to {worst_literal:.3g}",
    )


def check_analytic_vs_mc(n: int = 100_000, seed: int = 2024, workers=None) -> CheckResult:
    exact = analytics.coverage_closed(BASELINE).p_c
    est = estimate_coverage(BASELINE, n_trials=n, seed=seed, workers=workers)
    gap = abs(est.p_c_hat - exact)
    return CheckResult(
        "analytic vs Monte Carlo at the reference scenario",
        gap <= 3 * est.stderr,
        f"analytic={exact:.5f}, mc={est.p_c_hat:.5f} +/- {est.stderr:.5f}, |gap|={gap / est.stderr:.2f} stderr",
    )


def offset_curve(base: SystemParams = BASELINE):
    return [analytics.coverage_closed(base.replace(delta=10 ** (db / 10))).p_c for db in OFFSET_DB]


def check_offset_peak() -> CheckResult:
    curve = offset_curve()
    best = OFFSET_DB[int(np.argmax(curve))]
    p20, p40 = curve[OFFSET_DB.index(20)], curve[OFFSET_DB.index(40)]
    return CheckResult(
        "coverage vs power offset peaks at 20 dB",
        best == 20 and p40 < p20,
        f"argmax={best} dB, p_c(20 dB)={p20:.5f}, p_c(40 dB)={p40:.5f}",
    )


def check_pico_density_trend(n: int = 100_000, seed: int = 5, workers=None) -> CheckResult:
    base = BASELINE.replace(delta=100.0)
    exact, gaps = [], []
    for scale in PICO_SCALES:
        p = base.replace(lambda2=base.lambda2 * scale)
        exact.append(analytics.coverage_closed(p).p_c)
        if n:
            est = estimate_coverage(p, n_trials=n, seed=seed, workers=workers)
            gaps.append(abs(est.p_c_hat - exact[-1]) / est.stderr)
    increasing = all(b > a for a, b in zip(exact, exact[1:]))
    consistent = all(g <= 3 for g in gaps)
    return CheckResult(
        "coverage increases with pico intensity",
        increasing and consistent,
        "p_c=" + ", ".join(f"{v:.5f}" for v in exact) + "; mc gaps (stderr)=" + ", ".join(f"{g:.2f}" for g in gaps),
    )


def ks_statistic(sample, cdf) -> float:
    return float(stats.kstest(np.asarray(sample), cdf).statistic)


def check_distance_laws(n: int = 100_000, seed: int = 7) -> CheckResult:
    geom = CellGeometry(BASELINE.d)
    r1 = nearest_macro_distances(sample_user_positions(geom, derive_stream(seed, 0), n), geom)
    r2 = sample_nearest_pico_distance(BASELINE.lambda2, derive_stream(seed, 1), size=n)
    ks1 = ks_statistic(r1, lambda r: f1_cdf(r, geom.d))
    ks2 = ks_statistic(r2, lambda r: -np.expm1(-BASELINE.lambda2 * math.pi * np.square(r)))
    crit = 1.63 / math.sqrt(n)
    return CheckResult(
        "distance laws (KS, 1% level)",
        ks1 < crit and ks2 < crit,
        f"KS r1={ks1:.5f}, KS r2={ks2:.5f}, critical={crit:.5f}",
    )


def check_interference_law(n: int = 100_000, seed: int = 11) -> CheckResult:
    parts, ok = [], True
    for r in CONDITIONAL_RADII:
        exact = float(analytics.laplace_success_prob(r, 1.0, BASELINE.lambda0, BASELINE.alpha))
        est = conditional_success_mc(r, 1.0, BASELINE, n, seed)
        wide = conditional_success_mc(r, 1.0, BASELINE, n, seed, radius_scale=2.0)
        se = est.stderr
        ok &= abs(est.estimate - exact) <= 3 * se and abs(wide.estimate - est.estimate) < se
        parts.append(
            f"r={r:g}: {est.estimate:.4f} vs {exact:.4f} ({abs(est.estimate - exact) / se:.2f} se, "
            f"2R shift {abs(wide.estimate - est.estimate) / se:.2f} se)"
        )
    return CheckResult("conditional success vs Laplace transform", ok, "; ".join(parts))


def check_degenerate_limits(n: int = 10_000, seed: int = 13) -> CheckResult:
    free = BASELINE.replace(t1=0.0, t2=0.0)
    pc = analytics.coverage_closed(free).p_c
    mc = estimate_coverage(free, n_trials=n, seed=seed).p_c_hat
    no_pico = analytics.p_psuc_closed(BASELINE.replace(lambda2=0.0))
    no_bias = analytics.p_psuc_closed(BASELINE.replace(delta=0.0))
    ok = abs(pc - 1) <= 1e-9 and mc == 1.0 and no_pico <= 1e-9 and no_bias <= 1e-9
    return CheckResult(
        "degenerate limits",
        ok,
        f"T=0: p_c={pc!r}, mc={mc!r}; lambda2=0: P_psuc={no_pico!r}; delta=0: P_psuc={no_bias!r}",
    )


def determinism_config(n: int) -> RunConfig:
    return RunConfig(sweep=SweepSpec("delta_db", (0.0, 20.0, 40.0), mode="both", n_trials=n, seed=3))


def check_determinism(n: int = 2_000, worker_counts=(1, 2, 8)) -> CheckResult:
    cfg = determinism_config(n)
    blobs = []
    old = os.environ.get("HETNET_WORKERS")
    try:
        with tempfile.TemporaryDirectory() as tmp:
            for i, k in enumerate((worker_counts[0],) + tuple(worker_counts)):
                os.environ["HETNET_WORKERS"] = str(k)
                out = Path(tmp) / f"run{i}.csv"
                emit_csv(run_sweep(cfg), out)
                blobs.append(out.read_bytes())
    finally:
        if old is None:
            os.environ.pop("HETNET_WORKERS", None)
        else:
            os.environ["HETNET_WORKERS"] = old
    same = all(b == blobs[0] for b in blobs)
    return CheckResult(
        "byte-identical CSV across runs and worker counts",
        same,
        f"{len(blobs)} runs, workers={list(worker_counts)}, n={n}",
    )


def run_all(n: int = 100_000, workers=None):
    yield check_oracle_equivalence()
    yield check_analytic_vs_mc(n, workers=workers)
    yield check_offset_peak()
    yield check_pico_density_trend(n, workers=workers)
    yield check_distance_laws(n)
    yield check_interference_law(n)
    yield check_degenerate_limits(min(n, 10_000))
    yield check_determinism(min(n, 2_000))
