"""Command-line front end.

    photonbandit run --pa 0.6 --pb 0.4 --t 50 --si 14 --cp 2 --seed 7
    photonbandit sweep-si --pa 0.9 --pb 0.1 --si-range 1:50 --out si.csv
    photonbandit sweep-cp --pa 0.7 --pb 0.3 --si 10 --cp-range 1:10
    photonbandit figure fig3a --format svg --out fig3a.svg
    photonbandit selftest

Data goes to ``--out`` (stdout by default); diagnostics go to stderr.
Exit status: 0 ok, 1 I/O or selftest failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from typing import Optional, Sequence

from . import __version__, figures, report
from ._backend import BACKEND
from .environment import MachinesSpec
from .experiment import (
    DEFAULT_T_VALUES,
    RunConfig,
    SweepResult,
    SweepRow,
    monte_carlo_mean,
    run_episode,
    sweep_check_span,
    sweep_search_interval,
)
from .strategy import StrategyParams

FIGURE_HELP = """figure presets (defaults; flags override):
  fig3a  T=50, CP=2, SI 1:50, (PA,PB) in (0.6,0.4) (0.7,0.3) (0.8,0.2) (0.9,0.1)
         plus the entangled-only baseline
  fig3b  as fig3a for every T in 10,20,...,100
  fig3c  fig3b normalized per curve plus the T-averaged curve per pair
  fig4a  optimal SI vs difficulty for (0.9,0.1) ... (0.5,0.5), T in 10..100
  fig4b  (0.7,0.3), SI=10, CP 1:10, averaged over T in 10..100
"""


def probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {text}")
    return p


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def period(text: str) -> Optional[int]:
    if text.strip().lower() == "none":
        return None
    return positive_int(text)


def seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def int_range(text: str) -> range:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"range must look like A:B, got {text!r}")
    lo, hi = (positive_int(p) for p in parts)
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def int_list(text: str) -> list[int]:
    try:
        values = [positive_int(p) for p in text.split(",") if p.strip()]
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad list {text!r}: {exc}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _common(p: argparse.ArgumentParser, figure: bool = False) -> None:
    g = p.add_argument_group("simulation")
    if not figure:
        g.add_argument("--pa", type=probability, default=0.6, help="hit probability of machine A (default 0.6)")
        g.add_argument("--pb", type=probability, default=0.4, help="hit probability of machine B (default 0.4)")
        g.add_argument("--t", type=period, default=50, help="happy-hour period in steps, or 'none' (default 50)")
        g.add_argument("--strategy", choices=["mixed", "entangled-only"], default="mixed")
    g.add_argument("--si", type=positive_int, default=None, help="search interval (default 14; fig4b: 10)")
    g.add_argument("--cp", type=positive_int, default=None, help="check span (default 2)")
    g.add_argument("--early-exit", action="store_true", help="end a check on the first half-coin win")
    g.add_argument("--steps", type=positive_int, default=1500)
    g.add_argument("--reps", type=positive_int, default=1000)
    g.add_argument("--seed", type=seed, default=0, help="master seed (default 0)")
    g.add_argument("--threads", type=positive_int, default=1, help="worker threads; results do not depend on it")
    o = p.add_argument_group("output")
    o.add_argument("--out", default="-", help="output path (default stdout)")
    o.add_argument("--format", choices=["csv", "svg"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonbandit",
        description="Entangled/correlated photon mixed strategy for the 2-player, 2-machine competitive bandit.",
        epilog=FIGURE_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} backend)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="Monte Carlo mean for one configuration")
    _common(p)
    p.add_argument("--trace-rep", type=int, default=None, metavar="I", help="write the step trace of repetition I instead")

    p = sub.add_parser("sweep-si", help="sweep the search interval")
    _common(p)
    p.add_argument("--si-range", type=int_range, default=range(1, 51))

    p = sub.add_parser("sweep-cp", help="sweep the check span, averaged over happy-hour periods")
    _common(p)
    p.add_argument("--cp-range", type=int_range, default=range(1, 11))
    p.add_argument("--t-values", type=int_list, default=list(DEFAULT_T_VALUES))

    p = sub.add_parser(
        "figure", help="reproduce a figure preset", epilog=FIGURE_HELP, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    p.add_argument("name", choices=figures.FIGURES)
    _common(p, figure=True)
    p.add_argument("--si-range", type=int_range, default=range(1, 51))
    p.add_argument("--cp-range", type=int_range, default=figures.FIG4B_CP_RANGE)
    p.add_argument("--t-values", type=int_list, default=list(DEFAULT_T_VALUES))

    sub.add_parser("selftest", help="optics sampling and baseline checks")
    return parser


def resolve_config(args) -> RunConfig:
    params = StrategyParams(
        si=args.si if args.si is not None else 14,
        cp=args.cp if args.cp is not None else 2,
        early_exit=args.early_exit,
    )
    return RunConfig(
        machines=MachinesSpec(args.pa, args.pb),
        happy_period=args.t,
        params=params,
        strategy_kind=args.strategy,
        steps=args.steps,
        reps=args.reps,
        master_seed=args.seed,
    )


def _figure_base(args) -> RunConfig:
    base = RunConfig(
        params=StrategyParams(14, 2, early_exit=args.early_exit), steps=args.steps, reps=args.reps, master_seed=args.seed
    )
    return figures.preset_base(args.name, base, args.si, args.cp)


def _emit(result, args, meta: dict, baseline: Optional[float] = None) -> None:
    if args.format == "svg":
        report.emit_svg(result, args.out, baseline=baseline)
    else:
        report.emit_csv(result, args.out, meta)


def _baseline_for(config: RunConfig, threads: int) -> Optional[float]:
    if config.strategy_kind != "mixed":
        return None
    return monte_carlo_mean(replace(config, strategy_kind="entangled-only"), threads)[0]


def cmd_run(args) -> int:
    config = resolve_config(args)
    meta = {"command": "run", "backend": BACKEND}
    if args.trace_rep is not None:
        if not 0 <= args.trace_rep:
            raise argparse.ArgumentTypeError("--trace-rep must be >= 0")
        ep = run_episode(config, args.trace_rep, trace=True)
        report.emit_csv(ep, args.out, {**config.describe(), **meta, "rep_index": args.trace_rep})
        return 0
    mean, se = monte_carlo_mean(config, args.threads)
    result = SweepResult("si", [SweepRow(config.params.si, mean, se, config.reps)], config)
    if args.format == "svg":
        raise argparse.ArgumentTypeError("svg output needs a sweep; use sweep-si or figure")
    _emit(result, args, meta)
    return 0


def cmd_sweep_si(args) -> int:
    config = resolve_config(args)
    sw = sweep_search_interval(config, args.si_range, args.threads)
    _emit(sw, args, {"command": "sweep-si", "backend": BACKEND}, _baseline_for(config, args.threads) if args.format == "svg" else None)
    return 0


def cmd_sweep_cp(args) -> int:
    config = resolve_config(args)
    sw = sweep_check_span(config, args.cp_range, args.t_values, args.threads)
    _emit(sw, args, {"command": "sweep-cp", "backend": BACKEND})
    return 0


def cmd_figure(args) -> int:
    base = _figure_base(args)
    fig = figures.build(args.name, base, args.si_range, args.cp_range, args.t_values, args.threads)
    meta = {
        "command": f"figure {args.name}",
        "backend": BACKEND,
        "cp": base.params.cp,
        "si": base.params.si if args.name == "fig4b" else f"{args.si_range.start}:{args.si_range.stop - 1}",
        "early_exit": base.params.early_exit,
        "steps": base.steps,
        "reps": base.reps,
        "master_seed": base.master_seed,
    }
    if args.name != "fig3a":
        meta["t_values"] = ",".join(map(str, args.t_values))
    if args.name == "fig4b":
        meta["cp_range"] = f"{args.cp_range.start}:{args.cp_range.stop - 1}"
    _emit(fig, args, meta)
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    return run_selftest(sys.stderr)


COMMANDS = {
    "run": cmd_run,
    "sweep-si": cmd_sweep_si,
    "sweep-cp": cmd_sweep_cp,
    "figure": cmd_figure,
    "selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        print(f"photonbandit: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"photonbandit: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
