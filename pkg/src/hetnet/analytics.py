"""Closed-form uplink coverage and the quadrature oracles that check it.

The coverage probability splits into a macro part and a pico part::

    P_c = P_msuc + P_psuc

``p_msuc_closed`` and ``p_psuc_closed`` evaluate the closed
forms term by term, with only the residual ``arccos`` moment left to
quadrature. ``p_msuc_numeric`` and ``p_psuc_numeric`` integrate the
conditional success probabilities directly against the density of ``r1``
and serve as oracles.

Noise is ignored throughout (interference-limited regime).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, IntegrationError
from .geometry import SQRT3, f1_pdf
from .radio import SystemParams
from .special import DEFAULT_QUADRATURE, QuadratureConfig, integrate, q_function

# Below this value of k * d**2 / 3 the closed forms are a 0/0 limit.
_DEGENERATE_EXPONENT = 1e-12


def slivnyak_coefficient(lambda0: float, alpha: float) -> float:
    """``2 pi^2 lambda0 / (alpha sin(2 pi / alpha))``."""
    if not alpha > 2:
        raise DomainError(f"alpha must exceed 2, got {alpha!r}")
    return 2.0 * math.pi**2 * lambda0 / (alpha * math.sin(2.0 * math.pi / alpha))


def laplace_success_prob(r, threshold: float, lambda0: float, alpha: float):
    """P(SINR >= threshold | serving distance r) under Rayleigh fading and a PPP of interferers."""
    if threshold < 0:
        raise DomainError(f"threshold must be nonnegative, got {threshold!r}")
    coef = slivnyak_coefficient(lambda0, alpha) * threshold ** (2.0 / alpha)
    return np.exp(-coef * np.square(r))


def k_constant(params: SystemParams) -> float:
    """Exponent rate of ``P_msuc``: interference term plus pico-avoidance term."""
    return slivnyak_coefficient(params.lambda0, params.alpha) * params.t1 ** (
        2.0 / params.alpha
    ) + math.pi * params.lambda2 * params.bias_ratio ** (2.0 / params.alpha)


def prob_macro_association_given_r1(r1, params: SystemParams):
    """P(no pico BS closer than the biased association radius | r1)."""
    rate = math.pi * params.lambda2 * params.bias_ratio ** (2.0 / params.alpha)
    return np.exp(-rate * np.square(r1))


def _arccos_moment_substituted(k: float, d: float, cfg: QuadratureConfig) -> float:
    # r = d / (2 cos t) removes the square-root cusp of arccos at r = d/2.
    def f(t):
        c = math.cos(t)
        return d**4 * t * math.sin(t) / (16.0 * c**5) * math.exp(-k * d * d / (4.0 * c * c))

    return integrate(f, 0.0, math.pi / 6.0, cfg)


def arccos_moment(k: float, d: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Residual integral ``int_{d/2}^{d/sqrt3} r^3 arccos(d/2r) exp(-k r^2) dr``."""

    def f(r):
        return r**3 * math.acos(min(1.0, d / (2.0 * r))) * math.exp(-k * r * r)

    try:
        return integrate(f, d / 2.0, d / SQRT3, cfg)
    except IntegrationError:
        return _arccos_moment_substituted(k, d, cfg)


def gaussian_moment_terms(k: float, d: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> tuple[float, ...]:
    """The four closed-form terms of ``E[exp(-k r1^2)]`` in their usual order."""
    kd2 = k * d * d
    e3 = math.exp(-kd2 / 3.0)
    return (
        2.0 * math.pi * (1.0 - e3) / (SQRT3 * d * d * k),
        -2.0 * math.pi / (3.0 * SQRT3) * e3,
        math.sqrt(3.0 * math.pi / kd2) * math.exp(-kd2 / 4.0) * (1.0 - 2.0 * q_function(math.sqrt(kd2 / 6.0))),
        -8.0 * SQRT3 / (d * d) * k * arccos_moment(k, d, cfg),
    )


def p_msuc_terms(params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> tuple[float, ...]:
    return gaussian_moment_terms(k_constant(params), params.d, cfg)


def p_msuc_closed(params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Probability of macro association followed by successful decoding."""
    k = k_constant(params)
    if k * params.d**2 / 3.0 < _DEGENERATE_EXPONENT:
        return 1.0
    return math.fsum(gaussian_moment_terms(k, params.d, cfg))


def expected_exp_r1sq(k: float, d: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``E[exp(-k r1^2)]`` by quadrature against the density of ``r1``.

    Split at ``d/2`` where the density changes branch.
    """

    def f(r):
        return math.exp(-k * r * r) * f1_pdf(r, d)

    return integrate(f, 0.0, d / 2.0, cfg) + integrate(f, d / 2.0, d / SQRT3, cfg)


def p_msuc_numeric(params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    return expected_exp_r1sq(k_constant(params), params.d, cfg)


def _pico_rates(params: SystemParams):
    """Return ``(share, rate)``.

    ``share`` is the probability that the pico BS succeeds once the inner
    integral over ``r2`` runs to infinity, and ``rate`` is the Gaussian rate
    in ``r1`` that the finite association radius leaves behind.
    """
    a = params.alpha
    interference = slivnyak_coefficient(params.lambda0, a) * params.t2 ** (2.0 / a)
    void = math.pi * params.lambda2
    share = void / (interference + void)
    rate = params.bias_ratio ** (2.0 / a) * (interference + void)
    return share, rate


def p_psuc_terms(params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> tuple[float, ...]:
    """The five terms of the pico closed form, with the literal signs.

    The undefined symbol ``G`` is read as 1. The last term carries the
    literal sign; see :func:`p_psuc_closed`.
    """
    a, d, l0, l2 = params.alpha, params.d, params.lambda0, params.lambda2
    s = a * math.sin(2.0 * math.pi / a)
    t2 = params.t2 ** (2.0 / a)
    bias = params.bias_ratio
    b1 = bias ** (1.0 / a)
    b2 = bias ** (2.0 / a)
    den = 2.0 * math.pi * l0 * t2 + l2 * s
    expo = math.pi * b2 * d * d * (l2 + 2.0 * math.pi * l0 * t2 / s)
    e3 = math.exp(-expo / 3.0)
    e4 = math.exp(-expo / 4.0)
    q_arg = d * b1 * math.sqrt(math.pi * den / (6.0 * s))
    _, rate = _pico_rates(params)
    return (
        s * l2 / den,
        -2.0 * l2 * s * s / (b2 * SQRT3 * d * d * den**2) * (1.0 - e3),
        2.0 * math.pi * l2 * s / (3.0 * SQRT3 * den) * e3,
        -SQRT3 * l2 * s**1.5 / (b1 * d * den**1.5) * e4 * (1.0 - 2.0 * q_function(q_arg)),
        -24.0 * math.pi * l2 / (SQRT3 * d * d) * b2 * arccos_moment(rate, d, cfg),
    )


def p_psuc_closed(
    params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE, *, literal: bool = False
) -> float:
    """Probability of pico association followed by successful decoding.

    The expression is ``share * (1 - E[exp(-rate r1^2)])``
    expanded with the same four-term identity as the macro part, which
    flips the sign of every term including the ``arccos`` residual. The
    literal formula keeps a minus sign on that residual; by default it is
    evaluated with the sign that the expansion requires. Pass
    ``literal=True`` for the literal sum.
    """
    if params.lambda2 == 0 or params.delta == 0:
        return 0.0
    _, rate = _pico_rates(params)
    if rate * params.d**2 / 3.0 < _DEGENERATE_EXPONENT:
        return 0.0
    terms = list(p_psuc_terms(params, cfg))
    if not literal:
        terms[-1] = -terms[-1]
    return math.fsum(terms)


def p_psuc_numeric(params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Pico part integrated directly over ``r1``.

    The inner integral over ``r2`` (exponential law in ``r2^2``) is done
    analytically; the outer one numerically against the density of ``r1``.
    """
    if params.lambda2 == 0 or params.delta == 0:
        return 0.0
    share, rate = _pico_rates(params)
    d = params.d

    def f(r):
        return share * -math.expm1(-rate * r * r) * f1_pdf(r, d)

    return integrate(f, 0.0, d / 2.0, cfg) + integrate(f, d / 2.0, d / SQRT3, cfg)


@dataclass(frozen=True)
class CoverageBreakdown:
    p_msuc: float
    p_psuc: float

    @property
    def p_c(self) -> float:
        return self.p_msuc + self.p_psuc


def coverage_closed(params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> CoverageBreakdown:
    return CoverageBreakdown(p_msuc_closed(params, cfg), p_psuc_closed(params, cfg))


def coverage_numeric(params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> CoverageBreakdown:
    return CoverageBreakdown(p_msuc_numeric(params, cfg), p_psuc_numeric(params, cfg))


def macro_association_probability(params: SystemParams, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Unconditional probability that the typical user picks the macro tier."""
    rate = math.pi * params.lambda2 * params.bias_ratio ** (2.0 / params.alpha)
    return expected_exp_r1sq(rate, params.d, cfg)
