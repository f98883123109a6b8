"""CSV and SVG writers.

Every CSV starts with ``#`` comment lines carrying the resolved configuration
and seed; numbers use fixed 6-decimal formatting so reruns are byte-identical.
"""
from __future__ import annotations

import io
import math
import sys
from typing import Iterable, Optional, Sequence, TextIO, Union
from xml.sax.saxutils import escape

from . import __version__
from .experiment import EpisodeResult, SweepResult
from .figures import FigureResult

SWEEP_COLUMNS = ["param", "mean_total_reward", "stderr", "reps"]


def fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.6f}"
    return str(x)


def _param(x) -> str:
    # sweep parameters are integers except difficulty
    if float(x).is_integer():
        return str(int(x))
    return f"{float(x):.6f}"


def _header(meta: dict) -> list[str]:
    lines = [f"# photonbandit {__version__}"]
    lines += [f"# {k}: {v}" for k, v in meta.items()]
    return lines


def _sweep_rows(sweep: SweepResult) -> Iterable[list[str]]:
    for r in sweep.rows:
        yield [_param(r.param), fmt(float(r.mean)), fmt(float(r.stderr)), str(r.reps)]


def csv_text(result: Union[SweepResult, EpisodeResult, FigureResult], meta: Optional[dict] = None) -> str:
    meta = dict(meta or {})
    lines: list[str] = []

    if isinstance(result, SweepResult):
        if result.config is not None:
            meta = {**result.config.describe(), **meta, "swept": result.param_name}
        for k, v in result.extra.items():
            meta.setdefault(k, v)
        lines += _header(meta)
        lines.append(",".join(SWEEP_COLUMNS))
        lines += [",".join(row) for row in _sweep_rows(result)]

    elif isinstance(result, FigureResult):
        meta = {"figure": result.name, **meta}
        for note in result.notes:
            meta.setdefault("note", note)
        lines += _header(meta)
        if result.table is not None:
            cols, rows = result.table
            lines.append(",".join(cols))
            lines += [",".join(_param(v) if k == 3 else fmt(float(v)) for k, v in enumerate(row)) for row in rows]
        else:
            normalized = result.name == "fig3c"
            cols = ["series", "param", "normalized_reward"] if normalized else ["series"] + SWEEP_COLUMNS
            lines.append(",".join(cols))
            for name, sweep in result.series.items():
                for row in _sweep_rows(sweep):
                    lines.append(",".join([name] + (row[:2] if normalized else row)))

    elif isinstance(result, EpisodeResult):
        lines += _header(meta)
        if result.trace:
            lines.append("step,phase,choice_1,choice_2,reward_1,reward_2,hit_a,hit_b,happy")
            for t, state, choices, out in result.trace:
                lines.append(
                    ",".join(
                        [
                            str(t),
                            type(state).__name__.lower(),
                            choices[0].name,
                            choices[1].name,
                            fmt(out.reward_1),
                            fmt(out.reward_2),
                            fmt(out.hit_a),
                            fmt(out.hit_b),
                            fmt(out.happy_active),
                        ]
                    )
                )
        lines.append(f"# total_reward: {fmt(result.total_reward)}")
        lines.append(f"# per_player: {fmt(result.per_player[0])},{fmt(result.per_player[1])}")
    else:
        raise TypeError(f"cannot write {type(result).__name__} as CSV")
    return "\n".join(lines) + "\n"


def _write(text: str, destination: Union[str, TextIO, None]) -> None:
    if destination is None or destination == "-":
        sys.stdout.write(text)
    elif isinstance(destination, io.TextIOBase) or hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def emit_csv(result, destination=None, meta: Optional[dict] = None) -> None:
    _write(csv_text(result, meta), destination)


# --- SVG -------------------------------------------------------------------

PALETTE = ["#d62728", "#2ca02c", "#e377c2", "#8c564b", "#1f77b4", "#ff7f0e", "#9467bd", "#7f7f7f", "#bcbd22"]
W, H = 720, 460
LEFT, RIGHT, TOP, BOTTOM = 70, 190, 40, 55


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-9 * step:
        out.append(round(v, 10))
        v += step
    return out


def svg_text(
    series: dict[str, tuple[Sequence[float], Sequence[float]]],
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    baseline: Optional[float] = None,
) -> str:
    """Polyline chart; the y-range always includes the baseline when given."""
    xs_all = [x for xs, _ in series.values() for x in xs]
    ys_all = [y for _, ys in series.values() for y in ys if not math.isnan(y)]
    if baseline is not None:
        ys_all.append(baseline)
    if len(xs_all) < 2:
        raise ValueError("need at least two points to plot")
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1
    pad = (y1 - y0) * 0.05 or 1.0
    y0, y1 = y0 - pad, y1 + pad
    pw, ph = W - LEFT - RIGHT, H - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def py(y):
        return TOP + (1 - (y - y0) / (y1 - y0)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<text x="{W / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" font-size="15">{escape(title)}</text>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{px(t):.2f}" y1="{TOP + ph}" x2="{px(t):.2f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(
            f'<text x="{px(t):.2f}" y="{TOP + ph + 18}" text-anchor="middle" font-family="sans-serif" font-size="11">{t:g}</text>'
        )
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{LEFT - 5}" y1="{py(t):.2f}" x2="{LEFT}" y2="{py(t):.2f}" stroke="black"/>')
        out.append(
            f'<text x="{LEFT - 8}" y="{py(t) + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="11">{t:g}</text>'
        )
    out.append(
        f'<text x="{LEFT + pw / 2:.1f}" y="{H - 15}" text-anchor="middle" font-family="sans-serif" font-size="13">{escape(x_label)}</text>'
    )
    out.append(
        f'<text x="18" y="{TOP + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {TOP + ph / 2:.1f})">{escape(y_label)}</text>'
    )
    if baseline is not None:
        out.append(
            f'<line class="baseline" x1="{LEFT}" y1="{py(baseline):.2f}" x2="{LEFT + pw}" y2="{py(baseline):.2f}" '
            f'stroke="#17becf" stroke-width="1.5" stroke-dasharray="6 4"/>'
        )
    for i, (name, (xs, ys)) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys) if not math.isnan(y))
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"><title>{escape(name)}</title></polyline>'
        )
        ly = TOP + 12 + 16 * i
        if ly < TOP + ph:
            out.append(f'<line x1="{W - RIGHT + 12}" y1="{ly}" x2="{W - RIGHT + 32}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
            out.append(
                f'<text x="{W - RIGHT + 36}" y="{ly + 4}" font-family="sans-serif" font-size="11">{escape(name)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(result: Union[SweepResult, FigureResult], destination=None, baseline: Optional[float] = None) -> None:
    if isinstance(result, SweepResult):
        if len(result.rows) < 2:
            raise ValueError("need at least two sweep points to plot")
        series = {"mixed": (list(result.params), list(result.means))}
        title = f"total reward vs {result.param_name}"
        text = svg_text(series, title, result.param_name, "total reward", baseline)
    elif isinstance(result, FigureResult):
        series = {
            name: (list(sw.params), list(sw.means)) for name, sw in result.series.items() if name != "entangled-only"
        }
        text = svg_text(series, result.name, result.x_label, result.y_label, result.baseline)
    else:
        raise TypeError(f"cannot plot {type(result).__name__}")
    _write(text, destination)
