"""Command-line interface: spectrum, sweep, figure and crossings subcommands.

Every option can also be supplied through a JSON config file (--config)
whose keys are the flag names; values given on the command line win.  CSV
goes to --out or stdout.  Exit codes: 0 on success, 2 on usage errors, 1
when a run produced no successful rows.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .spectral import crossing_scan
from .sweep import (
    MEASURE_NAMES,
    SweepConfig,
    crossings_to_csv,
    records_to_csv,
    run_sweep,
    spectrum_rows,
    spectrum_to_csv,
)

__all__ = ["main"]


class UsageError(Exception):
    pass


def _parse_float_list(text) -> tuple[float, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(float(v) for v in text)
    try:
        return tuple(float(part) for part in str(text).split(","))
    except ValueError as exc:
        raise UsageError(f"could not parse value list {text!r}: {exc}") from None


def _parse_range(text) -> tuple[float, ...]:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be MIN:MAX:STEPS, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"could not parse range {text!r}: {exc}") from None
    if steps < 1:
        raise UsageError(f"range needs at least one point, got {steps}")
    return tuple(float(v) for v in np.linspace(lo, hi, steps))


def _parse_pair(text) -> tuple[int, int]:
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(",")
    if len(parts) != 2:
        raise UsageError(f"pair must be two site indices i,j, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise UsageError(f"could not parse pair {text!r}: {exc}") from None


def _parse_measures(text) -> tuple[str, ...]:
    if isinstance(text, (list, tuple)):
        names = [str(v) for v in text]
    else:
        names = [part.strip() for part in str(text).split(",")]
    if names == ["all"]:
        return MEASURE_NAMES
    unknown = set(names) - set(MEASURE_NAMES)
    if unknown:
        raise UsageError(f"unknown measures {sorted(unknown)}; "
                         f"valid: {', '.join(MEASURE_NAMES)} or 'all'")
    return tuple(names)


def _load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"could not read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


class _Settings:
    """Flag values merged over config-file values (flags win)."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = _load_config(args.config) if getattr(args, "config", None) else {}

    def get(self, name: str, default=None):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        return self.config.get(name, default)

    def require(self, name: str):
        value = self.get(name)
        if value is None:
            raise UsageError(f"missing required option --{name.replace('_', '-')}")
        return value

    def grid(self, base: str, default=None) -> tuple[float, ...]:
        # --u beats --u-range; both beat config; config 'u' beats 'u_range'
        values = getattr(self.args, base, None)
        if values is not None:
            return _parse_float_list(values)
        rng = getattr(self.args, f"{base}_range", None)
        if rng is not None:
            return _parse_range(rng)
        if base in self.config:
            return _parse_float_list(self.config[base])
        if f"{base}_range" in self.config:
            return _parse_range(self.config[f"{base}_range"])
        if default is not None:
            return default
        raise UsageError(f"missing --{base} or --{base}-range")


def _write_text(text: str, out_path) -> None:
    if out_path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="output CSV path (default: stdout)")
    parser.add_argument("--config", help="JSON config file; keys are flag names")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dotchain",
        description="Exact diagonalization and pairwise quantum correlations "
                    "of short Hubbard chains of quantum dots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="all eigenvalues on a U grid")
    p.add_argument("--sites", type=int)
    p.add_argument("--u", help="comma-separated U values")
    p.add_argument("--u-range", help="U grid as MIN:MAX:STEPS")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="correlation measures over a (U, kT) grid")
    p.add_argument("--sites", type=int)
    p.add_argument("--pair", help="site pair as i,j (1-based)")
    p.add_argument("--u", help="comma-separated U values")
    p.add_argument("--u-range", help="U grid as MIN:MAX:STEPS")
    p.add_argument("--kt", help="comma-separated kT values")
    p.add_argument("--kt-range", help="kT grid as MIN:MAX:STEPS")
    p.add_argument("--measures", help=f"subset of {','.join(MEASURE_NAMES)} or 'all'")
    p.add_argument("--deg-tol", type=float, help="degeneracy clustering tolerance")
    p.add_argument("--band-gap-tol", type=float, help="band-splitting tolerance")
    p.add_argument("--workers", type=int, help="parallel workers over U values")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="preset computation for a reference figure")
    p.add_argument("fig_id", help="figure id (e.g. 2a); see --list")
    p.add_argument("--u", help="override the preset U values")
    p.add_argument("--u-range", help="override the preset U grid")
    p.add_argument("--kt", help="override the preset kT values")
    p.add_argument("--kt-range", help="override the preset kT grid")
    p.add_argument("--pair", help="override the preset site pair")
    p.add_argument("--deg-tol", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--plot", default=True, action=argparse.BooleanOptionalAction,
                   help="also render a PNG next to the CSV")
    _add_common(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("crossings", help="ground-multiplicity changes on a U grid")
    p.add_argument("--sites", type=int)
    p.add_argument("--u", help="comma-separated U values")
    p.add_argument("--u-range", help="U grid as MIN:MAX:STEPS")
    p.add_argument("--deg-tol", type=float)
    p.add_argument("--refine-tol", type=float, help="bisection width target")
    _add_common(p)
    p.set_defaults(func=cmd_crossings)

    return parser


def cmd_spectrum(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    n_sites = int(settings.require("sites"))
    u_values = settings.grid("u")
    rows = spectrum_rows(n_sites, u_values)
    _write_text(spectrum_to_csv(rows), settings.get("out"))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    cfg = SweepConfig(
        n_sites=int(settings.require("sites")),
        pair=_parse_pair(settings.require("pair")),
        u_values=settings.grid("u"),
        kt_values=settings.grid("kt"),
        measures=_parse_measures(settings.get("measures", "all")),
        degeneracy_tol=float(settings.get("deg_tol", 1e-9)),
        band_gap_tol=float(settings.get("band_gap_tol", 5.0)),
        workers=int(settings.get("workers", 1)),
    )
    records = run_sweep(cfg)
    _write_text(records_to_csv(records), settings.get("out"))
    if all(r.error for r in records):
        print("sweep produced no successful rows", file=sys.stderr)
        return 1
    return 0


def cmd_figure(args: argparse.Namespace) -> int:
    from . import figures

    settings = _Settings(args)
    fig_id = args.fig_id
    if fig_id not in figures.FIGURES:
        raise UsageError(f"unknown figure id {fig_id!r}; "
                         f"valid ids: {', '.join(figures.figure_ids())}")
    u_values = kt_values = None
    if settings.get("u") is not None or settings.get("u_range") is not None:
        u_values = settings.grid("u")
    if settings.get("kt") is not None or settings.get("kt_range") is not None:
        kt_values = settings.grid("kt")
    pair = settings.get("pair")
    kind, data = figures.compute_figure(
        fig_id,
        u_values=u_values,
        kt_values=kt_values,
        pair=_parse_pair(pair) if pair is not None else None,
        degeneracy_tol=settings.get("deg_tol"),
        workers=int(settings.get("workers", 1)),
    )
    out = settings.get("out", f"fig{fig_id}.csv")
    if kind == "spectrum":
        _write_text(spectrum_to_csv(data), out)
    else:
        _write_text(records_to_csv(data), out)
    if settings.get("plot", True) and out not in (None, "-"):
        png = str(Path(out).with_suffix(".png"))
        figures.render_figure(fig_id, kind, data, png)
        print(f"wrote {out} and {png}", file=sys.stderr)
    if kind == "sweep" and all(r.error for r in data):
        print("figure sweep produced no successful rows", file=sys.stderr)
        return 1
    return 0


def cmd_crossings(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    n_sites = int(settings.require("sites"))
    u_values = settings.grid("u")
    try:
        events = crossing_scan(
            n_sites, u_values,
            tol_rel=float(settings.get("deg_tol", 1e-9)),
            refine_tol=float(settings.get("refine_tol", 1e-6)),
        )
    except np.linalg.LinAlgError as exc:
        print(f"crossing scan failed: {exc}", file=sys.stderr)
        return 1
    _write_text(crossings_to_csv(n_sites, events), settings.get("out"))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
