"""Command-line front end.

Subcommands::

    slabeig solve        --potential P --walls A B [--n N] [--scan EMIN EMAX]
    slabeig wavefunction --potential P --walls A B --level K [--points M]
    slabeig convergence  --potential P --walls A B --n-values N1 N2 ...
    slabeig oracle       --potential P --walls A B [--grid-points G] [--compare]

Exit codes: 0 success, 2 usage or validation error, 3 requested level not
found, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from . import __version__
from .analytic import LITERATURE, closest_reference
from .errors import DomainError, ParseError, SlabError, ValidationError
from .grid import partition
from .oracle import fd_spectrum
from .potentials import parse_potential, render
from .spectrum import DEFAULT_DE, DEFAULT_TOL, solve
from .wavefun import reconstruct

log = logging.getLogger("slabeig")

EXIT_OK, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_NUMERIC = 0, 2, 3, 4
DEFAULT_N = 2000
DEFAULT_SPAN = 16.0

SPECTRUM_HEADER = ["index", "energy", "bracket_lo", "bracket_hi", "residual_shoot", "residual_B", "nodes"]


class UsageError(Exception):
    pass


class NotFound(Exception):
    pass


def fmt(v):
    """Nine significant digits, shared by CSV and JSON output."""
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.9g}"


def _num(v):
    if v is None:
        return None
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(fmt(v))


def _emit(args, rows, header, payload):
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec(args):
    if not args.potential:
        raise UsageError("--potential is required")
    if args.walls is None:
        raise UsageError("--walls is required")
    a, b = (float(v) for v in args.walls)
    return parse_potential(args.potential, a, b)


def _check_positive(name, value):
    if not value > 0:
        raise ValidationError(name, f"must be positive, got {value}")


def _disc(args, spec, n=None):
    n = args.n if n is None else n
    if int(n) != n or n < 0:
        raise ValidationError("--n", f"must be a non-negative integer, got {n}")
    return partition(spec, int(n))


def _window(args, disc):
    if args.scan is not None:
        lo, hi = (float(v) for v in args.scan)
    else:
        lo = float(np.min(disc.samples))
        hi = lo + DEFAULT_SPAN
    if not lo < hi:
        raise ValidationError("--scan", f"need EMIN < EMAX, got {lo} {hi}")
    _check_positive("--de", args.de)
    _check_positive("--tol", args.tol)
    return lo, hi


def _warn_diagnostics(levels):
    for lv in levels:
        if lv.diagnostic:
            log.warning("level %d (E=%.9g): %s", lv.index, lv.energy, lv.diagnostic)


def cmd_solve(args):
    spec = _spec(args)
    disc = _disc(args, spec)
    lo, hi = _window(args, disc)
    levels = solve(disc, lo, hi, args.de, args.tol)
    _warn_diagnostics(levels)
    rows = [
        (lv.index, lv.energy, lv.bracket[0], lv.bracket[1], lv.residual_shoot, lv.residual_B, lv.nodes)
        for lv in levels
    ]
    payload = {
        "potential": render(spec),
        "walls": [spec.a, spec.b],
        "n": disc.n,
        "levels": [
            dict(zip(SPECTRUM_HEADER, (_num(v) for v in row)), diagnostic=lv.diagnostic)
            for row, lv in zip(rows, levels)
        ],
    }
    _emit(args, rows, SPECTRUM_HEADER, payload)
    return EXIT_OK


def cmd_wavefunction(args):
    spec = _spec(args)
    disc = _disc(args, spec)
    if args.level is None or args.level < 0:
        raise ValidationError("--level", "a non-negative level index is required")
    if args.points < 2:
        raise ValidationError("--points", f"need at least 2, got {args.points}")
    lo, hi = _window(args, disc)
    levels = solve(disc, lo, hi, args.de, args.tol)
    if args.level >= len(levels):
        raise NotFound(f"level {args.level} not found: {len(levels)} level(s) in [{lo}, {hi}]")
    lv = levels[args.level]
    table = reconstruct(disc, lv.energy, args.points, stale_tol=max(1e-6, args.tol))
    log.info("level %d: E=%.9g nodes=%d norm_residual=%.2e", lv.index, lv.energy, table.nodes, table.norm_residual)
    payload = {
        "potential": render(spec),
        "walls": [spec.a, spec.b],
        "n": disc.n,
        "index": lv.index,
        "energy": _num(lv.energy),
        "nodes": table.nodes,
        "norm_residual": _num(table.norm_residual),
        "x": [_num(v) for v in table.x],
        "psi": [_num(v) for v in table.psi],
    }
    _emit(args, zip(table.x, table.psi), ["x", "psi"], payload)
    return EXIT_OK


def cmd_convergence(args):
    spec = _spec(args)
    if not args.n_values:
        raise ValidationError("--n-values", "at least one n is required")
    if args.levels < 1:
        raise ValidationError("--levels", f"must be >= 1, got {args.levels}")
    rows = []
    for n in args.n_values:
        disc = _disc(args, spec, n)
        lo, hi = _window(args, disc)
        levels = solve(disc, lo, hi, args.de, args.tol)
        _warn_diagnostics(levels)
        energies = [lv.energy for lv in levels[: args.levels]]
        energies += [None] * (args.levels - len(energies))
        rows.append([disc.n] + energies)
    header = ["n"] + [f"E{j}" for j in range(args.levels)]
    payload = {
        "potential": render(spec),
        "walls": [spec.a, spec.b],
        "rows": [{"n": r[0], "energies": [_num(v) for v in r[1:]]} for r in rows],
    }
    _emit(args, rows, header, payload)
    return EXIT_OK


def cmd_oracle(args):
    spec = _spec(args)
    if args.levels < 1:
        raise ValidationError("--levels", f"must be >= 1, got {args.levels}")
    if args.grid_points < args.levels + 2:
        raise ValidationError("--grid-points", f"need at least levels + 2 = {args.levels + 2}")
    res = fd_spectrum(spec, args.grid_points, args.levels, richardson_pair=args.richardson)
    best = res.best

    header = ["index", "oracle"]
    cols = [list(res.eigenvalues)]
    if res.extrapolated is not None:
        header += ["oracle_fine", "extrapolated"]
        cols += [list(res.fine_eigenvalues), list(res.extrapolated)]

    key = (render(spec), spec.a, spec.b)
    literature = []
    if args.compare:
        disc = _disc(args, spec)
        if args.scan is None:
            gap = best[-1] - best[-2] if len(best) > 1 else 1.0
            args.scan = (float(np.min(disc.samples)), best[-1] + 0.5 * gap)
        lo, hi = _window(args, disc)
        levels = solve(disc, lo, hi, args.de, args.tol)
        _warn_diagnostics(levels)
        solver = [levels[j].energy if j < len(levels) else None for j in range(args.levels)]
        delta = [s - o if s is not None else None for s, o in zip(solver, best)]
        header += ["solver", "delta"]
        cols += [solver, delta]
        if delta and all(d is not None for d in delta):
            log.info("max |solver - oracle| = %.3e", max(abs(d) for d in delta))

        sources = sorted({s for refs in LITERATURE.get(key, {}).values() for s in refs})
        for src in sources:
            header.append(src)
            cols.append([LITERATURE[key].get(j, {}).get(src) for j in range(args.levels)])
        for j in range(args.levels):
            for src, val in sorted(LITERATURE.get(key, {}).get(j, {}).items()):
                nearest = closest_reference(key, j, best[j])
                literature.append(
                    {
                        "index": j,
                        "source": src,
                        "value": val,
                        "oracle_minus_value": _num(best[j] - val),
                        "supported_by_oracle": nearest is not None and nearest[0] == src,
                    }
                )
                log.info("level %d: %s=%s, oracle %.9g", j, src, val, best[j])

    rows = [[j] + [c[j] for c in cols] for j in range(args.levels)]
    payload = {
        "potential": render(spec),
        "walls": [spec.a, spec.b],
        "grid_points": res.grid_points,
        "fine_grid_points": res.fine_grid_points,
        "levels": [dict(zip(header, (_num(v) for v in row))) for row in rows],
        "literature": literature,
    }
    _emit(args, rows, header, payload)
    return EXIT_OK


def _common(p):
    p.add_argument("--potential", help="potential expression, e.g. harmonic, poly:1*x^2+1*x^4, morse:400,1")
    p.add_argument("--walls", nargs=2, type=float, metavar=("A", "B"), help="wall positions a < b")
    p.add_argument("--n", type=int, default=DEFAULT_N, help="slab count minus one (default %(default)s)")
    p.add_argument("--scan", nargs=2, type=float, metavar=("EMIN", "EMAX"), help="energy window")
    p.add_argument("--de", type=float, default=DEFAULT_DE, help="scan step (default %(default)s)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="bisection width (default %(default)s)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--config", help="JSON file with default values for any flag")


def build_parser():
    parser = argparse.ArgumentParser(prog="slabeig", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    parser.subcommands = {}

    p = sub.add_parser("solve", help="eigenvalues in an energy window")
    _common(p)
    p.set_defaults(func=cmd_solve)
    parser.subcommands["solve"] = p

    p = sub.add_parser("wavefunction", help="normalized eigenfunction of one level")
    _common(p)
    p.add_argument("--level", type=int, help="0-based level index")
    p.add_argument("--points", type=int, default=2001, help="output samples (default %(default)s)")
    p.set_defaults(func=cmd_wavefunction)
    parser.subcommands["wavefunction"] = p

    p = sub.add_parser("convergence", help="lowest levels as a function of n")
    _common(p)
    p.add_argument("--n-values", nargs="+", type=int, default=None, help="slab counts to sweep")
    p.add_argument("--levels", type=int, default=2, help="levels per row (default %(default)s)")
    p.set_defaults(func=cmd_convergence)
    parser.subcommands["convergence"] = p

    p = sub.add_parser("oracle", help="finite-difference reference spectrum")
    _common(p)
    p.add_argument("--grid-points", type=int, default=4001, help="grid nodes incl. walls (default %(default)s)")
    p.add_argument("--levels", type=int, default=4, help="number of levels (default %(default)s)")
    p.add_argument("--richardson", action="store_true", help="add a run at h/2 and extrapolate")
    p.add_argument("--compare", action="store_true", help="add slab-solver columns and deltas")
    p.set_defaults(func=cmd_oracle)
    parser.subcommands["oracle"] = p
    return parser


_CONFIG_KEYS = {
    "potential", "walls", "n", "scan", "de", "tol", "format", "out", "level", "points",
    "n_values", "levels", "grid_points", "richardson", "compare",
}


def _load_config(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValidationError("--config", "top level must be an object")
    cfg = {}
    for key, value in data.items():
        k = key.replace("-", "_")
        if k not in _CONFIG_KEYS:
            raise ValidationError("--config", f"unknown key {key!r}")
        cfg[k] = value
    return cfg


def parse_args(argv=None):
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    if args.config:
        cfg = _load_config(args.config)
        # flags given on the command line win over the file
        parser.subcommands[args.command].set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def main(argv=None):
    logging.basicConfig(format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args = parse_args(argv)
    except (ValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"slabeig: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, ValidationError, ParseError, DomainError) as exc:
        print(f"slabeig: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotFound as exc:
        print(f"slabeig: error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except SlabError as exc:
        print(f"slabeig: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
