"""Gaussian tail function, incomplete gamma at 3/2, and adaptive quadrature."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate as _integrate

from .exceptions import IntegrationError

SQRT_PI = math.sqrt(math.pi)


def q_function(x: float) -> float:
    """Standard normal upper tail ``Q(x) = P(Z > x)``.

    ``erfc`` keeps full relative accuracy in the far right tail where
    ``1 - Phi(x)`` would cancel to zero.
    """
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def upper_incomplete_gamma_half(x: float) -> float:
    """``Gamma(1/2, x) = 2 sqrt(pi) Q(sqrt(2x))``."""
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x!r}")
    return 2.0 * SQRT_PI * q_function(math.sqrt(2.0 * x))


def upper_incomplete_gamma_3half(x: float) -> float:
    """``Gamma(3/2, x)`` from the recurrence ``Gamma(c+1, x) = c Gamma(c, x) + x^c e^-x``."""
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x!r}")
    if math.isinf(x):
        return 0.0
    return 0.5 * upper_incomplete_gamma_half(x) + math.sqrt(x) * math.exp(-x)


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    max_subdiv: int = 200
    # Absolute floor so integrands that underflow to ~0 still converge.
    abs_tol: float = 1e-15

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if int(self.max_subdiv) < 1:
            raise ValueError(f"max_subdiv must be at least 1, got {self.max_subdiv!r}")


DEFAULT_QUADRATURE = QuadratureConfig()


def integrate(f: Callable[[float], float], a: float, b: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    Raises :class:`IntegrationError` when QUADPACK reports that the
    tolerance could not be met within ``cfg.max_subdiv`` subintervals.
    """
    if a > b:
        raise ValueError(f"integration bounds out of order: a={a!r} > b={b!r}")
    if a == b:
        return 0.0
    out = _integrate.quad(
        f, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=int(cfg.max_subdiv), full_output=1
    )
    value, abserr, info = out[0], out[1], out[2]
    if len(out) > 3:
        raise IntegrationError(
            f"quadrature on [{a!r}, {b!r}] did not converge after {info.get('last')} subintervals "
            f"(estimate {value!r}, error {abserr!r}): {out[3]}"
        )
    return value
