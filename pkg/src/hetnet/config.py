"""Run configuration: a flat TOML document with a frozen set of keys.

Example::

    schema_version = 1
    lambda0 = 7.66e-3
    lambda2 = 3.06e-3
    delta_db = 20
    alpha = 4
    output = "offset.csv"

    [sweep]
    parameter = "delta_db"
    values = [0, 2, 4, 6]
    mode = "both"
    n_trials = 100000
    seed = 1

    [quadrature]
    rel_tol = 1e-10
    max_subdiv = 200

Every key is optional; missing ones take the reference-scenario defaults.
Unknown keys are rejected.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .exceptions import ConfigError, DomainError
from .radio import SystemParams, db_to_linear
from .special import QuadratureConfig

SCHEMA_VERSION = 1
PARAM_KEYS = ("lambda0", "lambda2", "p0", "p1", "p2", "delta_db", "alpha", "d", "t1", "t2", "noise")
SWEEP_KEYS = ("parameter", "values", "mode", "n_trials", "seed")
QUADRATURE_KEYS = ("rel_tol", "max_subdiv")
TOP_KEYS = PARAM_KEYS + ("schema_version", "output", "sweep", "quadrature")

SWEEP_PARAMETERS = ("delta_db", "lambda2_scale", "lambda0_scale", "t1", "t2", "alpha")
MODES = ("analytic", "montecarlo", "both")
DEFAULT_TRIALS = 100_000


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[float, ...]
    mode: str = "analytic"
    n_trials: int = DEFAULT_TRIALS
    seed: int = 0

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ConfigError(f"sweep.parameter must be one of {', '.join(SWEEP_PARAMETERS)}, got {self.parameter!r}")
        if self.mode not in MODES:
            raise ConfigError(f"sweep.mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if not self.values:
            raise ConfigError("sweep.values must not be empty")
        if self.mode != "analytic" and self.n_trials < 1:
            raise ConfigError(f"sweep.n_trials must be at least 1, got {self.n_trials!r}")

    @property
    def analytic(self) -> bool:
        return self.mode in ("analytic", "both")

    @property
    def montecarlo(self) -> bool:
        return self.mode in ("montecarlo", "both")


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams = field(default_factory=SystemParams)
    sweep: SweepSpec | None = None
    output: str | None = None
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)


def _number(section: str, key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}{key} must be a number, got {value!r}")
    return float(value)


def _integer(section: str, key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{section}{key} must be an integer, got {value!r}")
    return value


def _check_keys(section: str, table: dict, allowed) -> None:
    unknown = sorted(set(table) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in {section or 'top level'}: {', '.join(unknown)}")


def config_from_dict(doc: dict) -> RunConfig:
    """Validate a parsed document and build a :class:`RunConfig`."""
    _check_keys("", doc, TOP_KEYS)
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r}; this build reads {SCHEMA_VERSION}")

    values = {k: _number("", k, doc[k]) for k in PARAM_KEYS if k in doc}
    if "delta_db" in values:
        values["delta"] = db_to_linear(values.pop("delta_db"))
    try:
        params = SystemParams(**values)
    except DomainError as exc:
        raise ConfigError(f"invalid parameters: {exc}") from None

    sweep = None
    if "sweep" in doc:
        table = doc["sweep"]
        if not isinstance(table, dict):
            raise ConfigError("sweep must be a table")
        _check_keys("sweep", table, SWEEP_KEYS)
        if "parameter" not in table or "values" not in table:
            raise ConfigError("sweep needs both 'parameter' and 'values'")
        raw = table["values"]
        if not isinstance(raw, list):
            raise ConfigError("sweep.values must be an array of numbers")
        sweep = SweepSpec(
            parameter=str(table["parameter"]),
            values=tuple(_number("sweep.", "values", v) for v in raw),
            mode=str(table.get("mode", "analytic")),
            n_trials=_integer("sweep.", "n_trials", table.get("n_trials", DEFAULT_TRIALS)),
            seed=_integer("sweep.", "seed", table.get("seed", 0)),
        )

    quad = QuadratureConfig()
    if "quadrature" in doc:
        table = doc["quadrature"]
        if not isinstance(table, dict):
            raise ConfigError("quadrature must be a table")
        _check_keys("quadrature", table, QUADRATURE_KEYS)
        try:
            quad = QuadratureConfig(
                rel_tol=_number("quadrature.", "rel_tol", table.get("rel_tol", quad.rel_tol)),
                max_subdiv=_integer("quadrature.", "max_subdiv", table.get("max_subdiv", quad.max_subdiv)),
            )
        except ValueError as exc:
            raise ConfigError(f"invalid quadrature settings: {exc}") from None

    output = doc.get("output")
    if output is not None and not isinstance(output, str):
        raise ConfigError(f"output must be a string path, got {output!r}")
    return RunConfig(params=params, sweep=sweep, output=output, quadrature=quad)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: parse error: {exc}") from None
    return config_from_dict(doc)


def apply_sweep_value(params: SystemParams, parameter: str, value: float) -> SystemParams:
    """Return ``params`` with one swept quantity set.

    Intensity sweeps are multiplicative scales of the configured baseline.
    """
    if parameter == "delta_db":
        return params.replace(delta=db_to_linear(value))
    if parameter == "lambda2_scale":
        return params.replace(lambda2=params.lambda2 * value)
    if parameter == "lambda0_scale":
        return params.replace(lambda0=params.lambda0 * value)
    if parameter in ("t1", "t2", "alpha"):
        return params.replace(**{parameter: value})
    raise ConfigError(f"unknown sweep parameter {parameter!r}")

