"""Parameter grids for the reproduced figures.

fig3a  reward vs search interval, T=50, CP=2, four reward-probability pairs
       plus the entangled-only baseline
fig3b  reward vs search interval for every (pair, happy-hour period)
fig3c  fig3b normalized per curve, with the period-averaged curve per pair
fig4a  optimal search interval vs difficulty 1 - (P_A - P_B)
fig4b  reward vs check span at (0.7, 0.3), averaged over the periods
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .environment import MachinesSpec
from .experiment import (
    DEFAULT_SI_RANGE,
    DEFAULT_T_VALUES,
    RunConfig,
    SweepResult,
    SweepRow,
    monte_carlo_mean,
    normalize_rewards,
    optimal_si_curve,
    sweep_check_span,
    sweep_search_interval,
)

FIG3_PAIRS = ((0.6, 0.4), (0.7, 0.3), (0.8, 0.2), (0.9, 0.1))
FIG4A_PAIRS = ((0.9, 0.1), (0.8, 0.2), (0.7, 0.3), (0.6, 0.4), (0.5, 0.5))
FIG4B_PAIR = (0.7, 0.3)
FIG4B_CP_RANGE = range(1, 11)
FIG4B_SI = 10
FIG3_T = 50
FIG3_CP = 2

FIGURES = ("fig3a", "fig3b", "fig3c", "fig4a", "fig4b")


@dataclass
class FigureResult:
    name: str
    x_label: str
    y_label: str
    series: dict[str, SweepResult] = field(default_factory=dict)
    baseline: Optional[float] = None
    table: Optional[tuple[list[str], list[tuple]]] = None  # fig4a only
    notes: list[str] = field(default_factory=list)


def _label(p_a: float, p_b: float, t: Optional[int] = None) -> str:
    s = f"pa={p_a:g} pb={p_b:g}"
    return s if t is None else f"{s} T={t}"


def fig3a(base: RunConfig, si_range=DEFAULT_SI_RANGE, threads: int = 1) -> FigureResult:
    si_range = list(si_range)
    fig = FigureResult("fig3a", "search interval SI", "total reward")
    base = replace(base, happy_period=FIG3_T)
    for p_a, p_b in FIG3_PAIRS:
        cfg = replace(base, machines=MachinesSpec(p_a, p_b))
        fig.series[_label(p_a, p_b)] = sweep_search_interval(cfg, si_range, threads)
    ref = replace(base, machines=MachinesSpec(*FIG3_PAIRS[0]), strategy_kind="entangled-only")
    mean, se = monte_carlo_mean(ref, threads)
    fig.series["entangled-only"] = SweepResult("si", [SweepRow(si, mean, se, ref.reps) for si in si_range], ref)
    fig.baseline = mean
    fig.notes.append(f"entangled-only baseline at pa={FIG3_PAIRS[0][0]} pb={FIG3_PAIRS[0][1]}, independent of SI")
    return fig


def fig3b(base: RunConfig, si_range=DEFAULT_SI_RANGE, t_values=DEFAULT_T_VALUES, threads: int = 1) -> FigureResult:
    fig = FigureResult("fig3b", "search interval SI", "total reward")
    for p_a, p_b in FIG3_PAIRS:
        for t in t_values:
            cfg = replace(base, machines=MachinesSpec(p_a, p_b), happy_period=t)
            fig.series[_label(p_a, p_b, t)] = sweep_search_interval(cfg, si_range, threads)
    return fig


def fig3c(base: RunConfig, si_range=DEFAULT_SI_RANGE, t_values=DEFAULT_T_VALUES, threads: int = 1) -> FigureResult:
    raw = fig3b(base, si_range, t_values, threads)
    fig = FigureResult("fig3c", "search interval SI", "normalized total reward")
    for p_a, p_b in FIG3_PAIRS:
        curves = []
        for t in t_values:
            sw = raw.series[_label(p_a, p_b, t)]
            norm = normalize_rewards(sw)
            curves.append(norm.values)
            fig.series[_label(p_a, p_b, t)] = _as_sweep(norm.params, norm.values, sw)
        fig.series[_label(p_a, p_b) + " mean"] = _as_sweep(norm.params, np.mean(curves, axis=0), sw)
    return fig


def _as_sweep(params, values, like: SweepResult) -> SweepResult:
    rows = [SweepRow(p, float(v), float("nan"), like.rows[0].reps) for p, v in zip(params, values)]
    return SweepResult(like.param_name, rows, like.config)


def fig4a(base: RunConfig, si_range=DEFAULT_SI_RANGE, t_values=DEFAULT_T_VALUES, threads: int = 1) -> FigureResult:
    rows = optimal_si_curve(FIG4A_PAIRS, t_values, si_range, base, threads)
    fig = FigureResult("fig4a", "difficulty 1-(PA-PB)", "optimal search interval")
    fig.series["optimal SI"] = SweepResult(
        "difficulty", [SweepRow(round(r.difficulty, 12), float(r.optimal_si), 0.0, base.reps) for r in rows], base
    )
    fig.table = (
        ["difficulty", "p_a", "p_b", "optimal_si"],
        [(r.difficulty, r.p_a, r.p_b, r.optimal_si) for r in rows],
    )
    return fig


def fig4b(base: RunConfig, cp_range=FIG4B_CP_RANGE, t_values=DEFAULT_T_VALUES, threads: int = 1) -> FigureResult:
    cfg = replace(base, machines=MachinesSpec(*FIG4B_PAIR))
    fig = FigureResult("fig4b", "check span CP", "total reward (mean over T)")
    fig.series[_label(*FIG4B_PAIR)] = sweep_check_span(cfg, cp_range, t_values, threads)
    fig.notes.append(f"si={cfg.params.si}; T values {list(t_values)}")
    return fig


def preset_base(name: str, base: RunConfig, si: Optional[int] = None, cp: Optional[int] = None) -> RunConfig:
    """Figure defaults: CP=2 everywhere, SI=10 for the check-span sweep."""
    params = {"cp": FIG3_CP if cp is None else cp}
    if name == "fig4b":
        params["si"] = FIG4B_SI if si is None else si
    return base.with_params(**params)


def build(
    name: str,
    base: RunConfig,
    si_range: Sequence[int] = DEFAULT_SI_RANGE,
    cp_range: Sequence[int] = FIG4B_CP_RANGE,
    t_values: Sequence[int] = DEFAULT_T_VALUES,
    threads: int = 1,
) -> FigureResult:
    if name == "fig3a":
        return fig3a(base, si_range, threads)
    if name == "fig3b":
        return fig3b(base, si_range, t_values, threads)
    if name == "fig3c":
        return fig3c(base, si_range, t_values, threads)
    if name == "fig4a":
        return fig4a(base, si_range, t_values, threads)
    if name == "fig4b":
        return fig4b(base, cp_range, t_values, threads)
    raise ValueError(f"unknown figure {name!r}")
