"""Command-line front end: asymptotic bounds, rate sweeps and the verification suites.

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import itertools
import math
import sys
from pathlib import Path

from .oracle import REPORT_HEADER
from .output import Table, line_chart, series_from_table, to_csv
from .presets import PRESETS, get_preset, parse_grid
from .protocols import OperatingPoint, SecurityBudget, sweep
from .uncertainty import asymptotic_bound_ours, asymptotic_bound_standard
from .verification import run_suites

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

DEFAULTS = {
    "N": 1e10,
    "m_frac": 0.07,
    "b": "0",
    "wq": "0.05",
    "eps": 1e-36,
    "eps_prime": 1e-12,
    "eps_hat": 1e-12,
    "ec_factor": 1.2,
    "pa_sign": "additive",
    "trials": 1000,
    "seed": 0,
    "mc_trials": 100_000,
    "format": "csv",
}

# config-file key -> (argparse dest, converter)
CONFIG_KEYS = {
    "preset": ("preset", str),
    "protocol": ("protocol", str),
    "axis": ("axis", str),
    "grid": ("grid", str),
    "n": ("N", float),
    "m_frac": ("m_frac", float),
    "b": ("b", str),
    "wq": ("wq", str),
    "w_q": ("wq", str),
    "q": ("wq", str),
    "eps": ("eps", float),
    "eps_prime": ("eps_prime", float),
    "eps_hat": ("eps_hat", float),
    "ec_factor": ("ec_factor", float),
    "pa_sign": ("pa_sign", str),
    "trials": ("trials", int),
    "seed": ("seed", int),
    "mc_trials": ("mc_trials", int),
    "out": ("out", str),
    "format": ("format", str),
}

AXIS_NAMES = {"N": "N", "n": "N", "b": "b", "q": "wq", "wq": "wq", "w_q": "wq"}

RATE_HEADER = [
    "protocol", "N", "m", "n", "b", "w_q",
    "rate_ours", "rate_other", "rate_max", "rate_ours_raw", "rate_other_raw",
    "ours_entropy", "ours_leakage", "ours_correction",
    "other_entropy", "other_leakage", "other_correction",
    "status",
]
ASYMPTOTIC_HEADER = ["b", "q", "bound_ours", "bound_standard", "bound_max"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_config(path: str) -> dict:
    """Read ``key=value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        norm = key.lower().lstrip("-").replace("-", "_")
        if norm not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        dest, convert = CONFIG_KEYS[norm]
        try:
            values[dest] = convert(value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: invalid value {value!r} for {key}") from None
    return values


def _float_list(text, name: str) -> list[float]:
    if isinstance(text, (int, float)):
        return [float(text)]
    try:
        values = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--{name} expects a number or comma-separated numbers") from None
    if not values:
        raise UsageError(f"--{name} must not be empty")
    return values


def _given(args: argparse.Namespace) -> dict:
    """Explicit command-line values, then config values, without defaults."""
    cli = {k: v for k, v in vars(args).items() if v is not None and k in DEST_NAMES}
    config = load_config(args.config) if getattr(args, "config", None) else {}
    return {**config, **cli}


DEST_NAMES = frozenset(dest for dest, _ in CONFIG_KEYS.values())


def _budget(values: dict) -> SecurityBudget:
    try:
        return SecurityBudget(values["eps"], values["eps_prime"], values["eps_hat"], values["ec_factor"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _plan(kind: str, args: argparse.Namespace):
    """Merge defaults, preset, config and flags; return (values, axis, grid, series)."""
    user = _given(args)
    values = dict(DEFAULTS)
    preset_name = user.get("preset")
    series = [{}]
    if preset_name:
        try:
            preset = get_preset(preset_name)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if preset.kind != kind:
            raise UsageError(f"preset {preset_name} is a {preset.kind} preset, not {kind}")
        values.update({k if k != "w_q" else "wq": v for k, v in preset.fixed.items()})
        values.update(axis=preset.axis, grid=preset.grid)
        series = [{("wq" if k in ("q", "w_q") else k): v for k, v in s.items()} for s in preset.series]
    values.update(user)
    # a user-supplied value replaces the preset's series over the same parameter
    series = [{k: v for k, v in s.items() if k not in user} for s in series]
    series = list({tuple(sorted(s.items())): s for s in series}.values())

    axis = values.get("axis")
    grid = values.get("grid")
    if axis is not None:
        if axis not in AXIS_NAMES:
            raise UsageError(f"unknown axis {axis!r}; use N, b or wq")
        axis = AXIS_NAMES[axis]
        if grid is None:
            raise UsageError("--axis needs --grid")
        try:
            grid = parse_grid(str(grid))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif grid is not None:
        raise UsageError("--grid needs --axis")

    combos = []
    for s in series:
        merged = {**values, **s}
        bs = _float_list(merged["b"], "b")
        wqs = _float_list(merged["wq"], "wq")
        for b, wq in itertools.product(bs, wqs):
            combos.append({**merged, "b": b, "wq": wq})
    return values, axis, grid, combos


def _rate_row(protocol: str, point) -> list:
    ours, other = point.ours, point.other
    nan = math.nan
    return [
        protocol, point.N, point.m, point.n, float(point.b), float(point.w_q),
        point.rate_ours, point.rate_other, point.rate_max,
        point.rate_ours_raw, point.rate_other_raw,
        ours.entropy if ours else nan, ours.leakage if ours else nan,
        ours.correction if ours else nan,
        other.entropy if other else nan, other.leakage if other else nan,
        other.correction if other else nan,
        "ok" if point.ok else f"invalid: {point.error}",
    ]


def build_rate_table(protocol: str, args: argparse.Namespace):
    values, axis, grid, combos = _plan(protocol, args)
    budget = _budget(values)
    m_frac = values["m_frac"]
    if not 0.0 < m_frac < 0.5:
        raise UsageError(f"--m-frac must lie in (0, 0.5), got {m_frac}")
    if values["pa_sign"] not in ("additive", "subtractive"):
        raise UsageError("--pa-sign must be 'additive' or 'subtractive'")
    table = Table(list(RATE_HEADER))
    for c in combos:
        fixed = OperatingPoint(
            N=float(c["N"]), b=c["b"], w_q=c["wq"], m_fraction=m_frac,
            budget=budget, pa_sign=values["pa_sign"],
        )
        for point in sweep(protocol, axis or "N", fixed, grid if axis else [fixed.N]):
            table.add(_rate_row(protocol, point))
    return table, axis


def build_asymptotic_table(args: argparse.Namespace):
    values, axis, grid, combos = _plan("asymptotic", args)
    if axis == "N":
        raise UsageError("the asymptotic comparison sweeps b or q, not N")
    table = Table(list(ASYMPTOTIC_HEADER))
    for c in combos:
        for v in grid if axis is not None else [None]:
            b = v if axis == "b" else c["b"]
            q = v if axis == "wq" else c["wq"]
            try:
                ours = asymptotic_bound_ours(abs(b), q)
                standard = asymptotic_bound_standard(abs(b), q)
            except ValueError as exc:
                raise UsageError(f"invalid grid point b={b}, q={q}: {exc}") from None
            table.add([float(b), float(q), ours, standard, max(ours, standard)])
    return table, axis


def _chart(kind: str, table: Table, axis: str | None) -> str:
    x = {"N": "N", "b": "b", "wq": "w_q" if kind != "asymptotic" else "q", None: "N"}[axis]
    if kind == "asymptotic":
        group = [c for c in ("b", "q") if c != x]
        ys = {"bound_ours": ("ours", False), "bound_standard": ("standard", True)}
        ylabel = "min entropy per signal"
    else:
        group = [c for c in ("b", "w_q") if c != x]
        names = ("new", "old") if kind == "qkd" else ("ours", "other")
        ys = {"rate_ours": (names[0], False), "rate_other": (names[1], True)}
        ylabel = "rate per signal"
    series = series_from_table(table, x, ys, group)
    return line_chart(series, x, ylabel, log_x=(x == "N"), title=kind)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_table(kind: str, table: Table, axis, args) -> None:
    user = _given(args)
    fmt = user.get("format", DEFAULTS["format"])
    out = user.get("out")
    if fmt not in ("csv", "csv+svg"):
        raise UsageError(f"--format must be csv or csv+svg, got {fmt!r}")
    if fmt == "csv+svg" and not out:
        raise UsageError("--format csv+svg needs --out for the CSV path")
    # render everything before writing anything
    csv_text = to_csv(table)
    svg_text = _chart(kind, table, axis) if fmt == "csv+svg" else None
    _emit(csv_text, out)
    if svg_text is not None:
        _emit(svg_text, str(Path(out).with_suffix(".svg")))


def cmd_asymptotic(args) -> int:
    table, axis = build_asymptotic_table(args)
    _write_table("asymptotic", table, axis, args)
    return EXIT_OK


def cmd_qrng(args) -> int:
    table, axis = build_rate_table("qrng", args)
    _write_table("qrng", table, axis, args)
    return EXIT_OK


def cmd_qkd(args) -> int:
    table, axis = build_rate_table("qkd", args)
    _write_table("qkd", table, axis, args)
    return EXIT_OK


def cmd_sweep(args) -> int:
    user = _given(args)
    protocol = user.get("protocol")
    if protocol is None and user.get("preset") in PRESETS:
        protocol = PRESETS[user["preset"]].kind
    if protocol not in ("asymptotic", "qrng", "qkd"):
        raise UsageError("sweep needs --protocol asymptotic, qrng or qkd (or a --preset)")
    if user.get("axis") is None and user.get("preset") is None:
        raise UsageError("sweep needs --axis and --grid, or a --preset")
    if protocol == "asymptotic":
        return cmd_asymptotic(args)
    return cmd_qrng(args) if protocol == "qrng" else cmd_qkd(args)


def cmd_verify(args) -> int:
    values = {**DEFAULTS, **_given(args)}
    if values["format"] != "csv":
        raise UsageError("verify writes a CSV report only")
    try:
        reports = run_suites(values["trials"], values["seed"], values["mc_trials"],
                             corrupt=args.corrupt_bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    table = Table(list(REPORT_HEADER), [r.csv_row() for r in reports])
    _emit(to_csv(table), values.get("out"))
    failed = [r.claim for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} claims passed", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def _add_io(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; flags override it")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "csv+svg"), default=None)


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p.add_argument("--axis", choices=sorted(AXIS_NAMES), default=None, help="swept parameter")
    p.add_argument("--grid", help="start:stop:count, log:a:b:count or v1,v2,...")
    p.add_argument("--N", type=float, dest="N", help="number of signals (default 1e10)")
    p.add_argument("--m-frac", type=float, dest="m_frac", help="sampled fraction (default 0.07)")
    p.add_argument("--b", help="bias; a comma list gives one series per value")
    p.add_argument("--wq", "--q", dest="wq", help="observed error rate; comma list allowed")
    p.add_argument("--eps", type=float, help="epsilon of the sampling-based bounds (default 1e-36)")
    p.add_argument("--eps-prime", type=float, dest="eps_prime", help="QRNG overlap-rate epsilon")
    p.add_argument("--eps-hat", type=float, dest="eps_hat", help="QKD overlap-rate epsilon")
    p.add_argument("--ec-factor", type=float, dest="ec_factor", help="error-correction efficiency")
    p.add_argument("--pa-sign", choices=("additive", "subtractive"), dest="pa_sign", default=None,
                   help="sign of the 2 log2(1/eps) QRNG term")
    _add_io(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="biased-eur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (
        ("asymptotic", "compare the two asymptotic min-entropy bounds"),
        ("qrng", "SI-QRNG rates (single point without --axis)"),
        ("qkd", "BB84 key rates (single point without --axis)"),
        ("sweep", "generic sweep; pick --protocol or a --preset"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_params(p)
        if name == "sweep":
            p.add_argument("--protocol", choices=("asymptotic", "qrng", "qkd"), default=None)
    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--trials", type=int, help="random draws per oracle claim (default 1000)")
    v.add_argument("--seed", type=int, help="base seed (default 0)")
    v.add_argument("--mc-trials", type=int, dest="mc_trials",
                   help="Monte Carlo sampling trials (default 100000)")
    v.add_argument("--corrupt-bound", action="store_true", help=argparse.SUPPRESS)
    _add_io(v)
    return parser


COMMANDS = {
    "asymptotic": cmd_asymptotic,
    "qrng": cmd_qrng,
    "qkd": cmd_qkd,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"biased-eur: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
