"""Named parameter sweeps for the comparison figures, and the grid syntax."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

N_GRID = "log:6:12:61"
B_GRID = "0:0.5:101"
Q_GRID = "0:0.5:101"


@dataclass(frozen=True)
class Preset:
    """A sweep along ``axis`` for each series of fixed-parameter overrides.

    ``kind`` is ``asymptotic``, ``qrng`` or ``qkd``. ``fixed`` holds
    parameters shared by every series.
    """

    name: str
    kind: str
    axis: str
    grid: str
    series: tuple[dict, ...]
    fixed: dict = field(default_factory=dict)


PRESETS = {
    p.name: p
    for p in (
        Preset("fig1-left", "asymptotic", "q", Q_GRID, ({"b": 0.1},)),
        Preset("fig1-right", "asymptotic", "b", B_GRID, ({"q": 0.0}, {"q": 0.2})),
        Preset("fig2-left", "qrng", "N", N_GRID, ({"b": 0.0}, {"b": 0.2}), {"w_q": 0.05}),
        Preset("fig2-right", "qrng", "N", N_GRID, ({"b": 0.0}, {"b": 0.2}), {"w_q": 0.0}),
        Preset("fig3-left", "qrng", "b", B_GRID, ({},), {"N": 1e10, "w_q": 0.15}),
        Preset("fig3-right", "qrng", "b", B_GRID, ({},), {"N": 1e10, "w_q": 0.02}),
        Preset("fig4-left", "qkd", "N", N_GRID, ({"b": 0.0}, {"b": 0.1}), {"w_q": 0.05}),
        Preset("fig4-right", "qkd", "N", N_GRID, ({"b": 0.0}, {"b": 0.1}), {"w_q": 0.01}),
        Preset("fig5-left", "qkd", "b", B_GRID, ({},), {"N": 1e10, "w_q": 0.05}),
        Preset("fig5-right", "qkd", "b", B_GRID, ({},), {"N": 1e10, "w_q": 0.01}),
    )
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def parse_grid(spec: str) -> list[float]:
    """Parse a grid specification.

    ``start:stop:count`` is an inclusive linear grid, ``log:a:b:count`` the
    grid ``10^a .. 10^b`` evenly spaced in the exponent, and anything else a
    comma-separated list of values. An empty specification is an error.
    """
    text = spec.strip()
    if not text:
        raise ValueError("grid must be non-empty")
    parts = text.split(":")
    try:
        if parts[0] == "log":
            if len(parts) != 4:
                raise ValueError
            start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
            if count < 1:
                raise ValueError
            return [float(v) for v in np.logspace(start, stop, count)]
        if len(parts) == 3:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError
            return [float(v) for v in np.linspace(start, stop, count)]
        if len(parts) == 1:
            values = [float(v) for v in text.split(",") if v.strip()]
            if not values:
                raise ValueError
            return values
    except ValueError:
        pass
    raise ValueError(f"invalid grid {spec!r}; use start:stop:count, log:a:b:count or a list")
