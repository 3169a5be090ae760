"""Parameter sweeps and their CSV output."""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

from .analytics import coverage_closed
from .config import RunConfig, apply_sweep_value
from .exceptions import HetnetError
from .montecarlo import estimate_coverage
from .radio import SystemParams
from .special import DEFAULT_QUADRATURE, QuadratureConfig

log = logging.getLogger(__name__)

CSV_HEADER = (
    "sweep_param",
    "sweep_value",
    "p_msuc_analytic",
    "p_psuc_analytic",
    "p_c_analytic",
    "p_c_mc",
    "mc_stderr",
    "n_trials",
    "macro_fraction_mc",
)


@dataclass(frozen=True)
class SweepRow:
    sweep_param: str
    sweep_value: float | None
    p_msuc_analytic: float | None = None
    p_psuc_analytic: float | None = None
    p_c_analytic: float | None = None
    p_c_mc: float | None = None
    mc_stderr: float | None = None
    n_trials: int | None = None
    macro_fraction_mc: float | None = None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


def evaluate_point(
    params: SystemParams,
    *,
    analytic: bool = True,
    montecarlo: bool = False,
    n_trials: int = 100_000,
    seed: int = 0,
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE,
    workers: int | None = None,
    sweep_param: str = "none",
    sweep_value: float | None = None,
) -> SweepRow:
    """One table row. Errors are captured in ``row.error`` rather than raised."""
    values = {}
    try:
        if analytic:
            cov = coverage_closed(params, quadrature)
            values.update(p_msuc_analytic=cov.p_msuc, p_psuc_analytic=cov.p_psuc, p_c_analytic=cov.p_c)
        if montecarlo:
            est = estimate_coverage(params, n_trials=n_trials, seed=seed, workers=workers)
            values.update(
                p_c_mc=est.p_c_hat, mc_stderr=est.stderr, n_trials=est.n_trials, macro_fraction_mc=est.macro_fraction
            )
            if est.capped:
                log.warning("%d trials hit the interferer-disk cap at %s=%r", est.capped, sweep_param, sweep_value)
    except (HetnetError, ArithmeticError) as exc:
        return SweepRow(sweep_param, sweep_value, error=f"{type(exc).__name__}: {exc}")
    return SweepRow(sweep_param, sweep_value, **values)


def run_sweep(cfg: RunConfig, workers: int | None = None) -> list[SweepRow]:
    """Evaluate every value of ``cfg.sweep``; one row each.

    Every Monte Carlo row reuses the sweep seed, so neighbouring rows are
    driven by common random numbers.
    """
    spec = cfg.sweep
    if spec is None:
        raise ValueError("configuration has no sweep section")
    rows = []
    for value in spec.values:
        try:
            params = apply_sweep_value(cfg.params, spec.parameter, value)
        except HetnetError as exc:
            rows.append(SweepRow(spec.parameter, value, error=f"{type(exc).__name__}: {exc}"))
            continue
        rows.append(
            evaluate_point(
                params,
                analytic=spec.analytic,
                montecarlo=spec.montecarlo,
                n_trials=spec.n_trials,
                seed=spec.seed,
                quadrature=cfg.quadrature,
                workers=workers,
                sweep_param=spec.parameter,
                sweep_value=value,
            )
        )
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def write_csv(rows, fh) -> None:
    """Write ``rows`` with the fixed header to an open text stream."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([row.sweep_param] + [_cell(getattr(row, k)) for k in CSV_HEADER[1:]])


def emit_csv(rows, path) -> None:
    """Write ``rows`` to ``path``. Missing values become empty cells."""
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            write_csv(rows, fh)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {path}: {exc.strerror}") from exc


def read_csv(path) -> list[dict]:
    """Parse a CSV written by :func:`emit_csv` back into typed dicts."""
    out = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            row = {"sweep_param": rec["sweep_param"]}
            for key in CSV_HEADER[1:]:
                cell = rec[key]
                if cell == "":
                    row[key] = None
                elif key == "n_trials":
                    row[key] = int(cell)
                else:
                    row[key] = float(cell)
            out.append(row)
    return out
