"""Monte Carlo estimate of uplink coverage, independent of the closed forms.

One trial:

1. draw the user uniformly on the analysis triangle, ``r1`` = distance to
   the nearest vertex;
2. draw ``r2`` from the void probability of the pico PPP;
3. associate with the biased rule;
4. drop interfering users as a PPP of intensity ``lambda0`` on a disk
   around the serving BS, each with unit-mean exponential fading;
5. compare the SINR with the serving tier's threshold.

Interferers are generated in order of increasing distance (the squared
radii of a planar PPP, times ``pi * lambda0``, are the arrival times of a
unit-rate Poisson process). That has two consequences. A trial can stop
as soon as the partial interference already breaks the threshold, since
adding points only lowers the SINR. And growing the disk radius only
appends points, so runs with different radii share their inner points.

Truncation radius
-----------------
Interference beyond radius ``R`` has mean ``2 pi lambda0 p0 R^(2-a) / (a-2)``.
Since ``1 - E[exp(-s I_out)] <= s E[I_out]``, the success probability of
a trial with serving distance ``r`` and threshold ``T`` is overstated by at
most ``tol`` when::

    R = (2 pi lambda0 T r^a / ((a - 2) tol)) ** (1 / (a - 2))

The bias also carries the factor P(success), so it is smallest exactly
where ``R`` is large.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .geometry import CellGeometry, point_from_uniforms
from .radio import SystemParams, Tier, association_scale
from .stochastic import RandomSource, StreamFactory, open_uniform

DEFAULT_TRUNCATION_TOL = 1e-4
# Cap on the expected number of interferers in one disk.
MAX_EXPECTED_INTERFERERS = 2e6
_CHUNKS = tuple(64 * 2**i for i in range(11))  # 64 ... 65536, then repeat the last
_EPS_REL = 1e-12


@dataclass(frozen=True)
class TrialOutcome:
    tier: Tier
    r1: float
    r2: float
    sinr: float
    success: bool
    n_interferers: int = 0
    resampled: int = 0
    capped: bool = False


@dataclass(frozen=True)
class CoverageEstimate:
    n_trials: int
    macro_successes: int
    pico_successes: int
    macro_count: int
    resampled: int = 0
    capped: int = 0

    @property
    def p_msuc_hat(self) -> float:
        return self.macro_successes / self.n_trials

    @property
    def p_psuc_hat(self) -> float:
        return self.pico_successes / self.n_trials

    @property
    def p_c_hat(self) -> float:
        return (self.macro_successes + self.pico_successes) / self.n_trials

    @property
    def macro_fraction(self) -> float:
        return self.macro_count / self.n_trials

    @property
    def stderr(self) -> float:
        p = self.p_c_hat
        return math.sqrt(p * (1.0 - p) / self.n_trials)

    def __add__(self, other: "CoverageEstimate") -> "CoverageEstimate":
        return CoverageEstimate(
            self.n_trials + other.n_trials,
            self.macro_successes + other.macro_successes,
            self.pico_successes + other.pico_successes,
            self.macro_count + other.macro_count,
            self.resampled + other.resampled,
            self.capped + other.capped,
        )


@dataclass(frozen=True)
class ProbabilityEstimate:
    estimate: float
    stderr: float
    n_trials: int
    capped: int = 0


def interference_radius(
    serving_distance: float,
    threshold: float,
    params: SystemParams,
    *,
    tolerance: float = DEFAULT_TRUNCATION_TOL,
    scale: float = 1.0,
) -> tuple[float, bool]:
    """Disk radius for interferers and whether it hit the size cap.

    Never smaller than the serving distance itself.
    """
    a = params.alpha
    need = 2.0 * math.pi * params.lambda0 * threshold * serving_distance**a / ((a - 2.0) * tolerance)
    radius = max(need ** (1.0 / (a - 2.0)), serving_distance) * scale
    cap = math.sqrt(MAX_EXPECTED_INTERFERERS / (math.pi * params.lambda0))
    if radius > cap:
        return cap, True
    return radius, False


def _draw_interference(rng, params, radius, signal, threshold, eps, stop_early):
    """Sum interference inside ``radius``.

    Returns ``(interference, n_points, too_close)``. With ``stop_early`` the
    sum stops once ``signal / (I + noise)`` drops below ``threshold``.
    """
    rate = math.pi * params.lambda0
    limit = rate * radius * radius
    acc = 0.0
    interference = 0.0
    count = 0
    eps2 = eps * eps
    i = 0
    while True:
        m = _CHUNKS[min(i, len(_CHUNKS) - 1)]
        i += 1
        draws = rng.standard_exponential(2 * m)
        gaps, fades = draws[:m], draws[m:]
        arrivals = acc + np.cumsum(gaps)
        n_in = int(np.searchsorted(arrivals, limit, side="right"))
        if n_in:
            r_sq = arrivals[:n_in] / rate
            if r_sq[0] <= eps2:
                return interference, count, True
            interference += float(np.dot(fades[:n_in], r_sq ** (-0.5 * params.alpha))) * params.p0
            count += n_in
            if stop_early and signal / (interference + params.noise) < threshold:
                break
        if n_in < m:
            break
        acc = float(arrivals[-1])
    return interference, count, False


def _serving(tier, r1, r2):
    return r1 if tier is Tier.MACRO else r2


def run_trial(
    params: SystemParams,
    geom: CellGeometry,
    rng: RandomSource,
    *,
    tolerance: float = DEFAULT_TRUNCATION_TOL,
    radius_scale: float = 1.0,
    stop_early: bool = True,
) -> TrialOutcome:
    """Simulate one user.

    With ``stop_early`` a failed trial reports the SINR against the
    interferers drawn so far, which is already below the threshold; the
    success flag is the same as with ``stop_early=False``.
    """
    eps = _EPS_REL * geom.d
    scale = association_scale(params)
    verts = geom.vertices
    resampled = 0
    while True:
        u, v = rng.random(2)
        un = open_uniform(rng, 2)
        x, y = point_from_uniforms(geom, u, v)
        r1 = min(math.hypot(x - vx, y - vy) for vx, vy in verts)
        if params.lambda2 > 0:
            r2 = math.sqrt(-math.log(un[0]) / (math.pi * params.lambda2))
        else:
            r2 = math.inf
        h = -math.log(un[1])
        if r1 <= eps or r2 <= eps:
            resampled += 1
            continue
        tier = Tier.MACRO if r1 <= r2 * scale else Tier.PICO
        r = _serving(tier, r1, r2)
        threshold = params.t1 if tier is Tier.MACRO else params.t2
        signal = h * params.p0 * r ** (-params.alpha)
        radius, capped = interference_radius(r, threshold, params, tolerance=tolerance, scale=radius_scale)
        interference, n, too_close = _draw_interference(
            rng, params, radius, signal, threshold, eps, stop_early
        )
        if too_close:
            resampled += 1
            continue
        break
    total = interference + params.noise
    value = math.inf if total == 0.0 else signal / total
    return TrialOutcome(tier, r1, r2, value, value >= threshold, n, resampled, capped)


def _run_block(params, geom, seed, start, stop, tolerance, radius_scale):
    ms = ps = mc = rs = cp = 0
    streams = StreamFactory()
    for i in range(start, stop):
        out = run_trial(params, geom, streams(seed, i), tolerance=tolerance, radius_scale=radius_scale)
        macro = out.tier is Tier.MACRO
        mc += macro
        if out.success:
            if macro:
                ms += 1
            else:
                ps += 1
        rs += out.resampled
        # A capped disk can only bias trials that were counted as successes.
        cp += out.capped and out.success
    return CoverageEstimate(stop - start, ms, ps, mc, rs, cp)


def worker_count(workers: int | None = None) -> int:
    """Explicit argument, else ``HETNET_WORKERS``, else 1."""
    if workers is None:
        env = os.environ.get("HETNET_WORKERS", "").strip()
        workers = int(env) if env else 1
    return max(1, int(workers))


def _blocks(n: int, k: int):
    edges = np.linspace(0, n, k + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def estimate_coverage(
    params: SystemParams,
    geom: CellGeometry | None = None,
    n_trials: int = 100_000,
    seed: int = 0,
    *,
    workers: int | None = None,
    tolerance: float = DEFAULT_TRUNCATION_TOL,
    radius_scale: float = 1.0,
) -> CoverageEstimate:
    """Empirical coverage over ``n_trials`` independent trials.

    Trial ``i`` always uses ``derive_stream(seed, i)`` and only integer
    counts are aggregated, so the result does not depend on ``workers``.
    """
    if n_trials < 1:
        raise DomainError(f"n_trials must be at least 1, got {n_trials!r}")
    geom = geom or CellGeometry(params.d)
    if not math.isclose(geom.d, params.d, rel_tol=1e-12):
        raise DomainError(f"geometry radius {geom.d!r} does not match params.d {params.d!r}")
    k = min(worker_count(workers), n_trials)
    if k == 1:
        return _run_block(params, geom, seed, 0, n_trials, tolerance, radius_scale)
    blocks = _blocks(n_trials, k)
    with ProcessPoolExecutor(max_workers=k) as pool:
        futures = [
            pool.submit(_run_block, params, geom, seed, a, b, tolerance, radius_scale) for a, b in blocks
        ]
        parts = [f.result() for f in futures]
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def conditional_success_mc(
    r_fixed: float,
    threshold: float,
    params: SystemParams,
    n_trials: int,
    seed: int = 0,
    *,
    tolerance: float = DEFAULT_TRUNCATION_TOL,
    radius_scale: float = 1.0,
) -> ProbabilityEstimate:
    """Empirical P(h p0 r^-a >= threshold * (I + noise)) at a fixed serving distance."""
    if not r_fixed > 0:
        raise DomainError(f"r_fixed must be positive, got {r_fixed!r}")
    eps = _EPS_REL * params.d
    radius, capped = interference_radius(r_fixed, threshold, params, tolerance=tolerance, scale=radius_scale)
    wins = 0
    streams = StreamFactory()
    for i in range(n_trials):
        rng = streams(seed, i)
        while True:
            h = -math.log(open_uniform(rng))
            signal = h * params.p0 * r_fixed ** (-params.alpha)
            interference, _, too_close = _draw_interference(rng, params, radius, signal, threshold, eps, True)
            if not too_close:
                break
        total = interference + params.noise
        wins += total == 0.0 or signal / total >= threshold
    p = wins / n_trials
    return ProbabilityEstimate(p, math.sqrt(p * (1.0 - p) / n_trials), n_trials, wins if capped else 0)
