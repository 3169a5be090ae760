"""Command line entry point: ``hetnet {analytic,simulate,sweep,validate}``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

from .config import RunConfig, load_config
from .exceptions import ConfigError
from .sweep import SweepRow, emit_csv, evaluate_point, run_sweep, write_csv

_MODE_ALIASES = {"analytic": "analytic", "mc": "montecarlo", "both": "both"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML run configuration (defaults to the reference scenario)")
    common.add_argument("--output", help="CSV output path (overrides the config)")
    common.add_argument("--trials", type=int, help="Monte Carlo trials per point")
    common.add_argument("--seed", type=int, help="Monte Carlo seed")
    common.add_argument("--mode", choices=sorted(_MODE_ALIASES), help="evaluation mode for sweeps")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hetnet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analytic", parents=[common], help="closed-form coverage at one parameter point")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo coverage at one parameter point")
    sub.add_parser("sweep", parents=[common], help="sweep one parameter as set in the config")
    sub.add_parser("validate", parents=[common], help="run the validation suite")
    return parser


def _load(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if cfg.sweep is not None and any(v is not None for v in (args.mode, args.trials, args.seed)):
        changes = {}
        if args.mode:
            changes["mode"] = _MODE_ALIASES[args.mode]
        if args.trials is not None:
            changes["n_trials"] = args.trials
        if args.seed is not None:
            changes["seed"] = args.seed
        cfg = dataclasses.replace(cfg, sweep=dataclasses.replace(cfg.sweep, **changes))
    if args.output:
        cfg = dataclasses.replace(cfg, output=args.output)
    return cfg


def _finish(rows: list[SweepRow], cfg: RunConfig) -> int:
    if cfg.output:
        emit_csv(rows, cfg.output)
    else:
        write_csv(rows, sys.stdout)
    failed = [r for r in rows if r.failed]
    for r in failed:
        print(f"row {r.sweep_param}={r.sweep_value!r} failed: {r.error}", file=sys.stderr)
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = _load(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    trials = args.trials if args.trials is not None else (cfg.sweep.n_trials if cfg.sweep else 100_000)
    seed = args.seed if args.seed is not None else (cfg.sweep.seed if cfg.sweep else 0)

    if args.command == "analytic":
        row = evaluate_point(cfg.params, analytic=True, quadrature=cfg.quadrature)
        return _finish([row], cfg)
    if args.command == "simulate":
        row = evaluate_point(cfg.params, analytic=False, montecarlo=True, n_trials=trials, seed=seed)
        return _finish([row], cfg)
    if args.command == "sweep":
        if cfg.sweep is None:
            print("error: the config has no [sweep] section", file=sys.stderr)
            return 2
        return _finish(run_sweep(cfg), cfg)

    from .validation import run_all

    ok = True
    for result in run_all(trials):
        print(result.line(), flush=True)
        ok &= result.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
