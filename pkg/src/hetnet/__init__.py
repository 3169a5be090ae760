"""Uplink coverage of a macro + pico cellular network with cell range expansion."""

from .analytics import (
    CoverageBreakdown,
    coverage_closed,
    coverage_numeric,
    k_constant,
    laplace_success_prob,
    p_msuc_closed,
    p_msuc_numeric,
    p_psuc_closed,
    p_psuc_numeric,
    prob_macro_association_given_r1,
)
from .config import RunConfig, SweepSpec, load_config
from .exceptions import ConfigError, DomainError, HetnetError, IntegrationError
from .geometry import CellGeometry, Point2D, f1_cdf, f1_pdf, nearest_macro_distance, sample_user_position
from .montecarlo import CoverageEstimate, TrialOutcome, conditional_success_mc, estimate_coverage, run_trial
from .radio import SystemParams, Tier, path_loss, select_tier, sinr
from .special import QuadratureConfig, integrate, q_function, upper_incomplete_gamma_3half
from .stochastic import derive_stream
from .sweep import emit_csv, run_sweep

__version__ = "0.1.0"
