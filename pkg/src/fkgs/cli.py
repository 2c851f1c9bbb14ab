"""Command line front end: ``fkgs {run,converge-time,converge-space,invariants,bench}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .harness import (
    EXAMPLES,
    RunConfig,
    bench,
    invariant_series,
    run_with_diagnostics,
    spatial_error_table,
    temporal_error_table,
)
from .integrators import SchemeKind, StepFailure
from .io import (
    BENCH_HEADER,
    read_config_file,
    write_csv,
    write_diagnostics,
    write_error_table,
    write_fields,
    write_metadata,
)
from .model import InputError
from .spectral import ConfigurationError

# Keys shared by flags and config files, with their parsers. ``out`` maps to ``output_dir``.
_FIELDS = {
    "example": str,
    "scheme": str,
    "alpha": float,
    "beta": float,
    "n": None,
    "box": None,
    "tau": float,
    "t_final": float,
    "tol": float,
    "max_iter": int,
    "sample_every": int,
    "out": str,
    "r": float,
    "x0": float,
    "u0_variant": str,
}
_EXTRA = {"taus": None, "ns": None, "schemes": None, "repeats": int}

# Order studies need a tighter solver floor than conservation runs.
_ORDER_TOL = 1e-14


def _float_list(text: str) -> list[float]:
    return [float(t) for t in str(text).replace(";", ",").split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    return [int(t) for t in str(text).replace(";", ",").split(",") if t.strip()]


def _parse_n(text):
    values = _int_list(text)
    return values[0] if len(values) == 1 else tuple(values)


def _parse_box(text):
    values = _float_list(text)
    if len(values) % 2 or not values:
        raise ConfigurationError(f"box needs pairs of bounds, got {text!r}")
    return tuple((values[i], values[i + 1]) for i in range(0, len(values), 2))


_PARSERS = {"n": _parse_n, "box": _parse_box, "taus": _float_list, "ns": _int_list,
            "schemes": lambda s: [x.strip() for x in str(s).split(",") if x.strip()]}


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--example", choices=sorted(EXAMPLES), help="built-in problem (default ex41)")
    p.add_argument("--scheme", help=f"one of {', '.join(k.value for k in SchemeKind)} (default fpavf-c)")
    p.add_argument("--alpha", type=float, help="order of the Schrodinger operator, in (1, 2]")
    p.add_argument("--beta", type=float, help="order of the wave operator, in (1, 2]")
    p.add_argument("--n", help="nodes per axis, e.g. 128 or 16,16")
    p.add_argument("--box", help="bounds, e.g. -20,20 or 0,6.283,0,6.283")
    p.add_argument("--tau", type=float, help="time step (default 1e-3)")
    p.add_argument("--t-final", dest="t_final", type=float, help="final time (default 1)")
    p.add_argument("--tol", type=float, help="fixed-point tolerance")
    p.add_argument("--max-iter", dest="max_iter", type=int, help="fixed-point sweep budget")
    p.add_argument("--sample-every", dest="sample_every", type=int, help="diagnostics stride in steps")
    p.add_argument("--out", help="output directory (default out)")
    p.add_argument("--r", type=float, help="soliton velocity for ex41, |r| < 1")
    p.add_argument("--x0", type=float, help="soliton centre for ex41")
    p.add_argument("--u0-variant", dest="u0_variant", choices=("exact", "printed"),
                   help="ex41 initial u, u_t prefactors (default exact)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fkgs",
        description="Conservative pseudo-spectral solvers for the fractional Klein-Gordon-Schrodinger system.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="evolve one configuration; write diagnostics, final fields, metadata")
    _common(p)
    p = sub.add_parser("converge-time", help="E(tau) table over a halving list of time steps")
    _common(p)
    p.add_argument("--taus", help="comma separated, each half the previous, e.g. 0.01,0.005,0.0025")
    p = sub.add_parser("converge-space", help="E(N) table over a doubling list of grid sizes")
    _common(p)
    p.add_argument("--ns", help="comma separated, each twice the previous, e.g. 8,16,32,64")
    p = sub.add_parser("invariants", help="relative mass and energy drift series")
    _common(p)
    p = sub.add_parser("bench", help="wall time and solver sweeps per scheme")
    _common(p)
    p.add_argument("--schemes", help="comma separated (default fpavf,fpavf-c,fpavf-p,favf)")
    p.add_argument("--repeats", type=int, help="best-of repeats (default 1)")
    return parser


def _merge(args: argparse.Namespace) -> dict:
    """Flags over config file over defaults; returns parsed values."""
    file_values = read_config_file(args.config) if args.config else {}
    known = set(_FIELDS) | set(_EXTRA)
    unknown = set(file_values) - known
    if unknown:
        raise ConfigurationError(f"unknown keys in {args.config}: {sorted(unknown)}")
    out = {}
    for key in known:
        flag = getattr(args, key, None)
        raw = flag if flag is not None else file_values.get(key)
        if raw is None:
            continue
        cast = _PARSERS.get(key) or _FIELDS.get(key) or _EXTRA.get(key)
        out[key] = cast(raw) if isinstance(raw, str) else raw
    return out


def config_from_args(args: argparse.Namespace, default_tol: Optional[float] = None) -> tuple[RunConfig, dict]:
    values = _merge(args)
    extras = {k: values.pop(k) for k in list(values) if k in _EXTRA}
    if "out" in values:
        values["output_dir"] = values.pop("out")
    if "tol" not in values and default_tol is not None:
        values["tol"] = default_tol
    return RunConfig(**values), extras


def _print_table(header, rows, stream=sys.stdout):
    cells = [[str(h) for h in header]] + [[_fmt(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        print("  ".join(c.rjust(w) for c, w in zip(r, widths)), file=stream)


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _cmd_run(args):
    config, _ = config_from_args(args)
    out = Path(config.output_dir)
    rows, final = run_with_diagnostics(config)
    write_diagnostics(out / "diagnostics.csv", rows)
    write_fields(out / "fields.csv", final)
    write_metadata(out / "metadata.json", config, command="run", steps=rows[-1].step)
    last = rows[-1]
    print(f"{config.example} {config.scheme_kind.value} alpha={config.alpha_value} beta={config.beta_value} "
          f"steps={last.step} t={last.t:.6g}")
    print(f"max RM = {max(r.rm for r in rows):.3e}   max RH = {max(r.rh for r in rows):.3e}")
    print(f"wrote {out / 'diagnostics.csv'}, {out / 'fields.csv'}")
    return 0


def _cmd_invariants(args):
    config, _ = config_from_args(args)
    out = Path(config.output_dir)
    rows = invariant_series(config, keep_final=True)
    write_diagnostics(out / "diagnostics.csv", rows)
    write_metadata(out / "metadata.json", config, command="invariants")
    _print_table(("step", "t", "rm", "rh", "iters"), [(r.step, r.t, r.rm, r.rh, r.iters) for r in rows[-5:]])
    print(f"max RM = {max(r.rm for r in rows):.3e}   max RH = {max(r.rh for r in rows):.3e}")
    return 0


def _cmd_converge_time(args):
    config, extras = config_from_args(args, default_tol=_ORDER_TOL)
    taus = extras.get("taus") or [0.01, 0.005, 0.0025]
    table = temporal_error_table(config, taus)
    out = Path(config.output_dir)
    write_error_table(out / "errors_time.csv", table)
    write_metadata(out / "metadata.json", config, command="converge-time", taus=taus)
    _print_table(("tau", "error", "order"), [(r.param, r.error, r.order) for r in table.rows])
    return 0


def _cmd_converge_space(args):
    config, extras = config_from_args(args, default_tol=_ORDER_TOL)
    ns = extras.get("ns") or [8, 16, 32, 64]
    table = spatial_error_table(config, ns)
    out = Path(config.output_dir)
    write_error_table(out / "errors_space.csv", table)
    write_metadata(out / "metadata.json", config, command="converge-space", ns=ns)
    _print_table(("n", "error", "order"), [(int(r.param), r.error, r.order) for r in table.rows])
    return 0


def _cmd_bench(args):
    config, extras = config_from_args(args)
    schemes = extras.get("schemes") or ["fpavf", "fpavf-c", "fpavf-p", "favf"]
    rows = bench(config, schemes, repeats=extras.get("repeats", 1))
    out = Path(config.output_dir)
    table = [(r.scheme, r.wall_time, r.iterations, r.steps) for r in rows]
    write_csv(out / "bench.csv", BENCH_HEADER, table)
    write_metadata(out / "metadata.json", config, command="bench", schemes=schemes)
    _print_table(BENCH_HEADER, table)
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "invariants": _cmd_invariants,
    "converge-time": _cmd_converge_time,
    "converge-space": _cmd_converge_space,
    "bench": _cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except StepFailure as exc:
        print(f"fkgs: solver failure: {exc}", file=sys.stderr)
        return 3
    except (ConfigurationError, InputError, ValueError, RuntimeError, OSError) as exc:
        print(f"fkgs: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
