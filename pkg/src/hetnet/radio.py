"""System parameters, path loss, uplink SINR and biased cell association."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import DomainError

# Simulation settings of the reference scenario.
REFERENCE_SCENARIO = dict(lambda2=3.06e-3, lambda0=7.66e-3, t1=1.0, t2=1.0, d=50.0 / math.sqrt(3.0), power_ratio=100.0)


class Tier(enum.Enum):
    MACRO = "macro"
    PICO = "pico"


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    return 10.0 * math.log10(value)


@dataclass(frozen=True)
class SystemParams:
    """Scalar model parameters.

    ``delta`` is the range-expansion power offset on a linear scale. Only the
    ratio ``p1 / p2`` enters the model; the defaults use ``p1 = 100``,
    ``p2 = 1`` so that ``p2 * delta / p1`` is exactly 1 at ``delta = 100``.
    """

    lambda0: float = REFERENCE_SCENARIO["lambda0"]
    lambda2: float = REFERENCE_SCENARIO["lambda2"]
    p0: float = 1.0
    p1: float = 100.0
    p2: float = 1.0
    delta: float = 100.0
    alpha: float = 4.0
    d: float = REFERENCE_SCENARIO["d"]
    t1: float = REFERENCE_SCENARIO["t1"]
    t2: float = REFERENCE_SCENARIO["t2"]
    noise: float = 0.0

    def __post_init__(self):
        for name in ("lambda0", "lambda2", "p0", "p1", "p2", "delta", "alpha", "d", "t1", "t2", "noise"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise DomainError(f"{name} must be a finite number, got {value!r}")
        if not self.alpha > 2:
            raise DomainError(f"alpha must exceed 2, got {self.alpha!r}")
        if not self.p2 > 0:
            raise DomainError(f"p2 must be positive, got {self.p2!r}")
        if not self.p1 >= self.p2:
            raise DomainError(f"p1 must be at least p2, got p1={self.p1!r}, p2={self.p2!r}")
        if not self.p0 > 0:
            raise DomainError(f"p0 must be positive, got {self.p0!r}")
        if not self.d > 0:
            raise DomainError(f"d must be positive, got {self.d!r}")
        if not self.lambda0 > 0:
            raise DomainError(f"lambda0 must be positive, got {self.lambda0!r}")
        for name in ("lambda2", "delta", "t1", "t2", "noise"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be nonnegative, got {getattr(self, name)!r}")

    @property
    def delta_db(self) -> float:
        return linear_to_db(self.delta) if self.delta > 0 else -math.inf

    @property
    def bias_ratio(self) -> float:
        """``p2 * delta / p1``: the biased pico-to-macro power ratio."""
        return self.p2 * self.delta / self.p1

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)


def path_loss(r, alpha: float):
    if alpha <= 2:
        raise DomainError(f"alpha must exceed 2, got {alpha!r}")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("path loss is singular at distance 0; distances must be positive")
    out = r_arr ** (-alpha)
    return float(out) if out.ndim == 0 else out


def association_scale(params: SystemParams) -> float:
    """Factor ``(p1 / (p2 delta))**(1/alpha)``; macro wins iff ``r1 <= factor * r2``.

    Infinite when ``delta`` is 0, i.e. the pico tier is never selected.
    """
    ratio = params.bias_ratio
    if ratio == 0:
        return math.inf
    return ratio ** (-1.0 / params.alpha)


def select_tier(r1: float, r2: float, params: SystemParams) -> Tier:
    """Biased association: macro iff ``p1 r1^-a >= p2 delta r2^-a``.

    The comparison is done as ``r1 <= r2 * (p1 / (p2 delta))**(1/a)``, which
    is algebraically the same and exact when the bias cancels the power gap.
    Ties go to the macro tier.
    """
    if not (r1 > 0 and r2 > 0):
        raise DomainError(f"distances must be positive, got r1={r1!r}, r2={r2!r}")
    return Tier.MACRO if r1 <= r2 * association_scale(params) else Tier.PICO


def sinr(serving_distance, fading, interferer_distances, interferer_fadings, params: SystemParams) -> float:
    """Uplink SINR at the serving BS.

    All users transmit with ``p0``; interference is the fading-weighted sum
    over the other users. Returns ``inf`` when interference and noise are
    both zero.
    """
    dists = np.asarray(interferer_distances, dtype=float)
    fades = np.asarray(interferer_fadings, dtype=float)
    if dists.shape != fades.shape:
        raise DomainError("interferer distances and fadings must have the same length")
    signal = fading * params.p0 * path_loss(serving_distance, params.alpha)
    interference = float(np.sum(fades * params.p0 * path_loss(dists, params.alpha))) if dists.size else 0.0
    total = interference + params.noise
    if total == 0.0:
        return math.inf
    return signal / total
