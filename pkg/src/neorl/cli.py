"""Command-line front end: run, reproduce, selfcheck, calibrate.

Thin shell over the library; everything reachable here is reachable (and
tested) as plain function calls. Exit codes: 0 ok, 1 check failure,
2 usage/config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import config as cfgmod
from . import selfcheck
from .config import ConfigError, load_config, preset_configs, save_config
from .harness import default_threads, run_experiment, write_aggregate_csv
from .waterworld import EnvConfig, random_policy_calibration


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--runs", type=int, default=None, help="override n_runs")
    p.add_argument("--seed", type=int, default=None, help="override base_seed")
    p.add_argument("--threads", type=int, default=None,
                   help="parallel run workers (default: NEORL_THREADS or all cores)")
    p.add_argument("--raw", action="store_true", help="also write per-event raw.csv")


def _apply_overrides(cfg, args):
    if args.runs is not None:
        cfg = replace(cfg, n_runs=args.runs)
    if args.seed is not None:
        cfg = replace(cfg, base_seed=args.seed)
    return cfg


def cmd_run(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_config(cfg, out / "resolved_config.json")
    series = run_experiment(cfg, out_dir=out, threads=args.threads, write_raw=args.raw)
    print(f"wrote {out / 'aggregate.csv'} ({len(series)} bins, {cfg.n_runs} runs)")
    return 0


def cmd_reproduce(args) -> int:
    variants = preset_configs(args.preset, n_runs=args.runs, base_seed=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, cfg in variants.items():
        series = run_experiment(cfg, threads=args.threads)
        write_aggregate_csv(series, out / f"{name}.csv")
        save_config(cfg, out / f"{name}.config.json")
        tail = series.values[-len(series.values) // 4 :].mean()
        print(f"{name}: final-quarter mean {tail:+.3f} R/s -> {out / (name + '.csv')}")
    return 0


def cmd_selfcheck(_args) -> int:
    return 0 if selfcheck.run_all() else 1


def cmd_calibrate(args) -> int:
    if args.config:
        env = load_config(args.config).env
    else:
        env = EnvConfig()
    if args.seed is not None:
        env = replace(env, seed=args.seed)
    try:
        interval = random_policy_calibration(env, args.duration)
    except RuntimeError as e:
        print(f"calibration failed: {e}", file=sys.stderr)
        return 1
    print(f"mean encounter interval under random actions: {interval:.2f} s "
          f"({args.duration:.0f} s simulated)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neorl",
        description="Navigation experiments over one-hot maps and value-function banks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a JSON config")
    p_run.add_argument("--config", required=True, help="JSON run config")
    _add_common_flags(p_run)
    p_run.set_defaults(fn=cmd_run)

    p_rep = sub.add_parser("reproduce", help="run a named experiment preset")
    p_rep.add_argument("preset", help=f"one of: {', '.join(cfgmod.PRESETS)}")
    _add_common_flags(p_rep)
    p_rep.set_defaults(fn=cmd_reproduce)

    p_check = sub.add_parser("selfcheck", help="run built-in oracle suites")
    p_check.set_defaults(fn=cmd_selfcheck)

    p_cal = sub.add_parser("calibrate", help="measure random-policy encounter interval")
    p_cal.add_argument("--duration", type=float, default=600.0, help="simulated seconds")
    p_cal.add_argument("--config", default=None, help="JSON run config supplying the env")
    p_cal.add_argument("--seed", type=int, default=None, help="override env seed")
    p_cal.set_defaults(fn=cmd_calibrate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
