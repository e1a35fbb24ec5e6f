"""Command-line front end.

Subcommands ``density``, ``energy``, ``overlap``, ``cat`` and ``verify``.
Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 truncation cap reached.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .coherent import CatSpec, CoherentSpec, coherent_state, overlap_D, write_coefficients
from .config import DEFAULT_CONFIG, SystemConfig
from .dynamics import (cat_density_report, count_peaks, density_field, energy_curve, one_period)
from .errors import ExhoError, TruncationCapError
from .ladder import MUS, LadderKind
from .spectrum import SpatialGrid
from .verify import REPORT_HEADER, run_checks

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_CAP = 0, 1, 2, 3


class ConfigError(Exception):
    pass


def parse_z(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def _ladders(kinds: list[str] | None, mu: int | None, default_all: bool) -> list[LadderKind]:
    if not kinds:
        if not default_all:
            kinds = ["ctilde"]
        else:
            kinds = ["a", "c", "ctilde"]
    out = []
    for kind in kinds:
        if kind == "a":
            out.append(LadderKind.A())
        elif mu is not None:
            out.append(LadderKind(kind, mu))
        elif default_all:
            out.extend(LadderKind(kind, m) for m in MUS)
        else:
            raise ConfigError(f"--mu is required for ladder {kind}")
    return out


def _single_ladder(args) -> LadderKind:
    kind = args.ladder[0] if args.ladder else "ctilde"
    if args.ladder and len(args.ladder) > 1:
        raise ConfigError("this command takes a single --ladder")
    mu = args.mu if args.mu is not None or kind == "a" else -3
    return LadderKind.A() if kind == "a" else LadderKind(kind, mu)


def _config(args) -> SystemConfig:
    cfg = DEFAULT_CONFIG
    if getattr(args, "kmax", None) is not None:
        if args.kmax < 1:
            raise ConfigError("--kmax must be positive")
        cfg = replace(cfg, kmax=args.kmax)
    return cfg


def _grid(args) -> SpatialGrid:
    try:
        return SpatialGrid(args.xmin, args.xmax, args.nx)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _times(args, ladder: LadderKind, cat: bool = False) -> np.ndarray:
    if args.t is not None:
        return np.array([args.t])
    if args.t_samples < 1:
        raise ConfigError("--t-samples must be positive")
    return one_period(ladder, args.t_samples, cat=cat)


def _writable(path: Path) -> Path:
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir():
        raise ConfigError(f"output directory {parent} does not exist")
    return path


def _per_ladder_paths(out: Path, ladders: list[LadderKind]) -> list[Path]:
    if len(ladders) == 1:
        return [_writable(out)]
    tags = [lad.kind if lad.mu is None else f"{lad.kind}{lad.mu:+d}" for lad in ladders]
    return [_writable(out.with_name(f"{out.stem}_{tag}{out.suffix or '.csv'}")) for tag in tags]


def cmd_density(args) -> int:
    ladder = _single_ladder(args)
    cfg = _config(args)
    grid = _grid(args)
    times = _times(args, ladder)
    out = _writable(Path(args.out))
    v = coherent_state(ladder, args.z, cfg)
    field = density_field(v, grid, times, cfg)
    field.to_csv(out)
    if args.coeffs_out:
        write_coefficients(v, _writable(Path(args.coeffs_out)))
    peaks = len(count_peaks(field.values[:, 0], grid.points(), cfg.peak_threshold, cfg.peak_separation))
    print(f"ladder={ladder} z={args.z.real:g},{args.z.imag:g} K={v.K} "
          f"norm_deficit={field.max_deficit():.3e} peaks_t0={peaks} out={out}")
    return EXIT_OK


def cmd_energy(args) -> int:
    ladders = _ladders(args.ladder, args.mu, default_all=True)
    cfg = _config(args)
    if args.zmax < 0 or args.nz < 2:
        raise ConfigError("need --zmax >= 0 and --nz >= 2")
    zs = np.linspace(0.0, args.zmax, args.nz)
    for lad, path in zip(ladders, _per_ladder_paths(Path(args.out), ladders)):
        curve = energy_curve(lad, zs, cfg)
        curve.to_csv(path)
        print(f"ladder={lad} E(0)={curve.samples[0, 1]:.10g} E({args.zmax:g})={curve.samples[-1, 1]:.10g} "
              f"monotone={curve.is_monotone()} out={path}")
    return EXIT_OK


def cmd_overlap(args) -> int:
    ladders = _ladders(args.ladder, args.mu, default_all=True)
    if args.zmax < 0 or args.nz < 2:
        raise ConfigError("need --zmax >= 0 and --nz >= 2")
    zs = np.linspace(0.0, args.zmax, args.nz)
    for lad, path in zip(ladders, _per_ladder_paths(Path(args.out), ladders)):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["z_abs", "D"])
            for za in zs:
                w.writerow([format(za, ".17g"), format(overlap_D(za, lad), ".17g")])
        print(f"ladder={lad} D({args.zmax:g})={overlap_D(args.zmax, lad):.6e} out={path}")
    return EXIT_OK


def cmd_cat(args) -> int:
    ladder = _single_ladder(args)
    cfg = _config(args)
    grid = _grid(args)
    times = _times(args, ladder)
    out = _writable(Path(args.out))
    nodal = _writable(Path(args.nodal_out) if args.nodal_out else out.with_name(f"{out.stem}_nodal.csv"))
    try:
        spec = CatSpec(CoherentSpec(ladder, args.z), args.parity)
        rep = cat_density_report(spec, grid, times, cfg)
    except ExhoError as exc:
        if isinstance(exc, TruncationCapError):
            raise
        raise ConfigError(str(exc)) from None
    rep.field.to_csv(out)
    rep.trace_to_csv(nodal)
    print(f"ladder={ladder} parity={args.parity} z={args.z.real:g},{args.z.imag:g} "
          f"max_rho_at_0={rep.max_at_origin():.3e} min_rho_at_0={float(np.min(rep.origin_trace)):.3e} "
          f"norm_deficit={rep.field.max_deficit():.3e} out={out} nodal={nodal}")
    return EXIT_OK


def cmd_verify(args) -> int:
    lines = [REPORT_HEADER]
    print(REPORT_HEADER, flush=True)

    def show(check):
        lines.append(check.row())
        print(check.row(), flush=True)

    checks = run_checks(_config(args), progress=show)
    if args.out:
        Path(_writable(Path(args.out))).write_text("\n".join(lines) + "\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exho", description="Coherent and cat states of the type-III Hermite extended oscillator.")
    sub = parser.add_subparsers(dest="command", required=True)

    def ladder_args(p, many=False):
        p.add_argument("--ladder", choices=["a", "c", "ctilde"], action="append",
                       help="annihilation operator" + (" (repeatable; default all)" if many else " (default ctilde)"))
        p.add_argument("--mu", type=int, choices=MUS, help="lowest weight for c/ctilde")

    def state_args(p):
        ladder_args(p)
        p.add_argument("--z", type=parse_z, default=complex(15.0, 0.0), metavar="RE,IM",
                       help="coherent-state parameter (default 15,0; use --z=-3,0 for negatives)")
        p.add_argument("--t", type=float, default=None, help="single time instead of a period")
        p.add_argument("--t-samples", type=int, default=DEFAULT_CONFIG.t_samples,
                       help="samples over one period of the coherent state")
        p.add_argument("--xmin", type=float, default=DEFAULT_CONFIG.xmin)
        p.add_argument("--xmax", type=float, default=DEFAULT_CONFIG.xmax)
        p.add_argument("--nx", type=int, default=DEFAULT_CONFIG.nx)
        p.add_argument("--kmax", type=int, default=None, help="truncation cap")

    p = sub.add_parser("density", help="density field of a coherent state")
    state_args(p)
    p.add_argument("--out", default="density.csv")
    p.add_argument("--coeffs-out", default=None, help="also write k,nu,log_mag,phase")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("energy", help="energy expectation against |z|")
    ladder_args(p, many=True)
    p.add_argument("--zmax", type=float, default=15.0)
    p.add_argument("--nz", type=int, default=61)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--out", default="energy.csv")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("overlap", help="overlap <+z|-z> against |z|")
    ladder_args(p, many=True)
    p.add_argument("--zmax", type=float, default=15.0)
    p.add_argument("--nz", type=int, default=61)
    p.add_argument("--out", default="overlap.csv")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("cat", help="density field and rho(0, t) of a cat state")
    state_args(p)
    p.add_argument("--parity", choices=["even", "odd"], default="even")
    p.add_argument("--out", default="cat.csv")
    p.add_argument("--nodal-out", default=None, help="default: <out stem>_nodal.csv")
    p.set_defaults(func=cmd_cat)

    p = sub.add_parser("verify", help="run the invariant checks")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--out", default=None, help="also write the report here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ExhoError) as exc:
        if isinstance(exc, TruncationCapError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CAP
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
