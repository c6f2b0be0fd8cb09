"""In-memory result tables, their CSV form, and a minimal SVG line chart."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

FLOAT_FORMAT = ".9g"


@dataclass
class Table:
    header: list[str]
    rows: list[list] = field(default_factory=list)

    def add(self, row: list) -> None:
        if len(row) != len(self.header):
            raise ValueError(f"row has {len(row)} cells for {len(self.header)} columns")
        self.rows.append(row)

    def column(self, name: str) -> list:
        i = self.header.index(name)
        return [r[i] for r in self.rows]


def format_cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    return str(value)


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()


@dataclass(frozen=True)
class Series:
    label: str
    xs: tuple
    ys: tuple
    dashed: bool = False


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 55


def series_from_table(table: Table, x: str, ys: dict, group_by: list[str]) -> list[Series]:
    """One series per distinct ``group_by`` value and ``ys`` column.

    ``ys`` maps a column name to ``(label, dashed)``.
    """
    keys = [tuple(r[table.header.index(g)] for g in group_by) for r in table.rows]
    out = []
    for key in dict.fromkeys(keys):
        rows = [r for r, k in zip(table.rows, keys) if k == key]
        suffix = ", ".join(f"{g}={format_cell(v)}" for g, v in zip(group_by, key))
        for col, (label, dashed) in ys.items():
            i, j = table.header.index(x), table.header.index(col)
            name = f"{label} ({suffix})" if suffix else label
            out.append(Series(name, tuple(r[i] for r in rows), tuple(r[j] for r in rows), dashed))
    return out


def _finite(v) -> bool:
    return isinstance(v, (int, float)) and math.isfinite(v)


def _ticks(lo: float, hi: float, log: bool) -> list[float]:
    if log:
        return [float(e) for e in range(math.ceil(lo), math.floor(hi) + 1)]
    step = (hi - lo) / 5 if hi > lo else 1.0
    return [lo + k * step for k in range(6)]


def line_chart(series: list[Series], x_label: str, y_label: str, log_x: bool = False,
               title: str = "") -> str:
    """Render ``series`` as a standalone SVG document."""
    def tx(v):
        return math.log10(v) if log_x else v

    pts = [(tx(x), y) for s in series for x, y in zip(s.xs, s.ys)
           if _finite(x) and _finite(y) and (x > 0 or not log_x)]
    if not pts:
        raise ValueError("nothing to plot")
    x_lo, x_hi = min(p[0] for p in pts), max(p[0] for p in pts)
    y_lo = min(0.0, min(p[1] for p in pts))
    y_hi = max(p[1] for p in pts)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    y_hi += 0.05 * (y_hi - y_lo)
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(v):
        return LEFT + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return TOP + (1 - (v - y_lo) / (y_hi - y_lo)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(x_label)}</text>',
        f'<text x="16" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {TOP + ph / 2:.1f})">{escape(y_label)}</text>',
    ]
    for t in _ticks(x_lo, x_hi, log_x):
        label = f"1e{int(t)}" if log_x else f"{t:.3g}"
        out.append(f'<line x1="{px(t):.2f}" y1="{TOP + ph}" x2="{px(t):.2f}" y2="{TOP + ph + 5}" stroke="#333"/>')
        out.append(f'<text x="{px(t):.2f}" y="{TOP + ph + 18}" text-anchor="middle">{label}</text>')
    for t in _ticks(y_lo, y_hi, False):
        out.append(f'<line x1="{LEFT - 5}" y1="{py(t):.2f}" x2="{LEFT}" y2="{py(t):.2f}" stroke="#333"/>')
        out.append(f'<text x="{LEFT - 8}" y="{py(t) + 4:.2f}" text-anchor="end">{t:.3g}</text>')
    for k, s in enumerate(series):
        color = PALETTE[k // 2 % len(PALETTE)] if any(t.dashed for t in series) else PALETTE[k % len(PALETTE)]
        dash = ' stroke-dasharray="6 4"' if s.dashed else ""
        # non-finite values break the line into segments
        segment = []
        segments = [segment]
        for x, y in zip(s.xs, s.ys):
            if _finite(x) and _finite(y) and (x > 0 or not log_x):
                segment.append(f"{px(tx(x)):.2f},{py(y):.2f}")
            elif segment:
                segment = []
                segments.append(segment)
        for seg in segments:
            if seg:
                out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} '
                           f'points="{" ".join(seg)}"/>')
        ly = TOP + 14 + 16 * k
        out.append(f'<line x1="{LEFT + pw - 190}" y1="{ly - 4}" x2="{LEFT + pw - 165}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="1.5"{dash}/>')
        out.append(f'<text x="{LEFT + pw - 160}" y="{ly}">{escape(s.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
