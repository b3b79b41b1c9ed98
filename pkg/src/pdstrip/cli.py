"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage/input error,
3 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys

from . import catalog
from .certify import COSUM, CODIFFERENCE, classify_strip, fl_evaluator
from .engine import GridSpec, QuadResult, fl_derivative, fl_grid, fl_transform, grid_csv
from .errors import InputError, NumericError, OutOfFinitenessInterval
from .measure import parse_measure_file
from .moments import moment_table
from .strips import HORIZONTAL, VERTICAL, Strip, parse_ext_real

DEFAULT_SEED = 42
DEFAULT_TOL = 1e-10


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- value parsers -------------------------------------------------------

def complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from None


def real_list(count: int, conv=float):
    def parse(text: str):
        parts = text.split(",")
        if len(parts) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated values, got {text!r}")
        try:
            return tuple(conv(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad value list {text!r}") from None

    return parse


def ext_pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    try:
        return parse_ext_real(parts[0]), parse_ext_real(parts[1])
    except Exception:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}") from None


def key_value(text: str):
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        num = float(val)
        return key, int(num) if num.is_integer() and "." not in val else num
    except ValueError:
        return key, val


# -- parser --------------------------------------------------------------

def _add_source(p, required=True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--measure", metavar="FILE", help="measure descriptor JSON file")
    src.add_argument("--entry", metavar="NAME", help="catalog entry name")
    p.add_argument("--param", action="append", type=key_value, default=[], metavar="KEY=VALUE",
                   help="catalog entry parameter (repeatable)")
    p.add_argument("--region", type=int, metavar="INDEX",
                   help="catalog region index (default: the region containing the point)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pdstrip", description="Fourier-Laplace transforms and strip definiteness certificates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("transform", help="evaluate f(z) = int e^{izt} dmu(t)")
    _add_source(p)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--z", type=complex_pair, metavar="RE,IM", help="transform variable z")
    where.add_argument("--s", type=complex_pair, metavar="RE,IM", help="vertical variable s (z = i s)")
    where.add_argument("--grid", type=real_list(4), metavar="RE0,RE1,IM0,IM1", help="rectangular grid in z")
    p.add_argument("--counts", type=real_list(2, int), default=(11, 11), metavar="NRE,NIM")
    p.add_argument("--deriv", type=int, default=0, metavar="N", help="derivative order (point mode)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--csv", metavar="FILE", help="write grid CSV here instead of stdout")
    p.add_argument("--plot", metavar="FILE", help="render |f| over the grid")

    p = sub.add_parser("certify", help="classify definiteness on one strip")
    _add_source(p)
    p.add_argument("--strip", type=ext_pair, required=True, metavar="LO,HI")
    p.add_argument("--mode", choices=(CODIFFERENCE, COSUM), required=True)
    p.add_argument("--route", choices=("oracle", "measure"), default="oracle",
                   help="evaluate catalog entries by closed form or through their measure")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("scan", help="classify a ladder of adjacent strips")
    p.add_argument("--entry", required=True, metavar="NAME")
    p.add_argument("--param", action="append", type=key_value, default=[], metavar="KEY=VALUE")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--plot", metavar="FILE")

    p = sub.add_parser("moments", help="moments M_n^y of the tilted measure")
    _add_source(p)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--plot", metavar="FILE")

    p = sub.add_parser("catalog", help="list catalog entries")
    p.add_argument("action", choices=("list",))

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--only", action="append", metavar="ID", help="criterion id (repeatable)")
    p.add_argument("--out", metavar="FILE", help="write the summary table here")
    p.add_argument("--plot", metavar="FILE")
    return parser


_VALUE_FLAGS = {"--z", "--s", "--grid", "--strip", "--from", "--to", "--step", "--y"}
_NEGATIVE = re.compile(r"^-(\d|\.\d|inf)", re.IGNORECASE)


def _join_negative_values(argv):
    """Let ``--z -1,2`` work: argparse would otherwise read ``-1,2`` as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


# -- commands ------------------------------------------------------------

def _entry(args):
    return catalog.entry(args.entry, dict(args.param))


def _descriptor_for(args, y: float):
    """Descriptor for ``--measure`` or the catalog region whose interval contains ``y``."""
    if args.measure:
        return parse_measure_file(args.measure)
    e = _entry(args)
    regions = [r for r in e.regions if r.descriptor is not None]
    if args.region is not None:
        if not 0 <= args.region < len(e.regions) or e.regions[args.region].descriptor is None:
            raise UsageError(f"{e.name}: region {args.region} has no measure")
        return e.regions[args.region].descriptor
    for r in regions:
        if r.descriptor.contains(y):
            return r.descriptor
    raise OutOfFinitenessInterval(
        f"{e.name}: no represented region contains Im z = {y:g} "
        f"(intervals: {', '.join(str(r.descriptor.finiteness) for r in regions)})"
    )


def _echo(out, **kw):
    print("# " + " ".join(f"{k}={v}" for k, v in kw.items()), file=out)


def cmd_transform(args, out):
    _echo(out, tol=args.tol)
    if args.grid is not None:
        re0, re1, im0, im1 = args.grid
        if args.deriv:
            raise UsageError("--deriv applies to single points only")
        mu = _descriptor_for(args, 0.5 * (im0 + im1)) if (args.measure or args.region is not None) else None
        if mu is None:
            e = _entry(args)
            if len([r for r in e.regions if r.descriptor is not None]) != 1:
                raise UsageError(f"{e.name} has several regions; pick one with --region")
            mu = next(r.descriptor for r in e.regions if r.descriptor is not None)
        grid = GridSpec(Strip.horizontal(-math.inf, math.inf), (re0, re1), (im0, im1), tuple(args.counts))
        results = fl_grid(mu, grid, args.tol)
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                grid_csv(results, fh)
        else:
            out.write(grid_csv(results))
        if args.plot:
            from .plotting import plot_grid

            plot_grid(results, args.plot)
        return 0
    z = args.z if args.z is not None else 1j * args.s
    mu = _descriptor_for(args, z.imag)
    if args.deriv:
        r = fl_derivative(mu, z, args.deriv, args.tol)
    else:
        r = fl_transform(mu, z, args.tol)
    out.write(grid_csv([(z, r)]))
    return 0


def cmd_certify(args, out):
    lo, hi = args.strip
    orientation = HORIZONTAL if args.mode == CODIFFERENCE else VERTICAL
    strip = Strip(orientation, lo, hi)
    if args.measure:
        ev = fl_evaluator(parse_measure_file(args.measure), orientation, args.tol)
    else:
        e = _entry(args)
        if args.mode != e.mode:
            raise UsageError(f"{e.name} lives on {e.orientation} strips; use --mode {e.mode}")
        if args.route == "oracle":
            ev = e.evaluator()
        else:
            region = next(
                (r for r in e.regions if r.descriptor is not None
                 and r.strip.lo <= strip.lo and strip.hi <= r.strip.hi),
                None,
            )
            if region is None:
                raise UsageError(f"no measure of {e.name} represents {strip.label()}")
            ev = fl_evaluator(region.descriptor, e.orientation, args.tol)
    _echo(out, seed=args.seed, trials=args.trials, tol=args.tol)
    verdict = classify_strip(ev, strip, args.mode, args.trials, args.seed, args.tol)
    print(verdict.to_json(), file=out)
    return 0


def scan_strips(e, start, stop, step):
    if step <= 0 or stop <= start:
        raise UsageError("scan needs --from < --to and a positive --step")
    n = int(math.ceil((stop - start) / step - 1e-9))
    cls = Strip.horizontal if e.orientation == HORIZONTAL else Strip.vertical
    return [cls(start + k * step, min(start + (k + 1) * step, stop)) for k in range(n)]


def cmd_scan(args, out):
    e = catalog.entry(args.entry, dict(args.param))
    _echo(out, seed=args.seed, trials=args.trials, tol=args.tol)
    ev = e.evaluator()
    verdicts = [classify_strip(ev, s, e.mode, args.trials, args.seed, args.tol) for s in scan_strips(e, args.start, args.stop, args.step)]
    lines = ["lo,hi,verdict"] + [f"{v.strip.lo:.17g},{v.strip.hi:.17g},{v.mode}" for v in verdicts]
    text = "\n".join(lines) + "\n"
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    out.write(text)
    if args.plot:
        from .plotting import plot_scan

        plot_scan(verdicts, args.plot, title=f"{e.name}: {e.mode} verdicts")
    return 0


def cmd_moments(args, out):
    mu = _descriptor_for(args, args.y)
    _echo(out, tol=args.tol)
    records = moment_table(mu, args.y, args.max_n, args.tol)
    print("y,n,value,abs_err,method", file=out)
    for r in records:
        print(f"{r.y:.17g},{r.n},{r.value:.17g},{r.abs_err:.3g},{r.method}", file=out)
    if args.plot:
        from .plotting import plot_moments

        plot_moments(records, args.plot, title=f"moments at y={args.y:g}")
    return 0


def cmd_catalog(args, out):
    for line in catalog.catalog_lines():
        print(line, file=out)
    return 0


def cmd_verify(args, out):
    from .acceptance import CRITERIA, run_all, summary_table

    selected = set(args.only) if args.only else None
    if selected and not selected <= set(CRITERIA):
        raise UsageError(f"unknown criterion ids {sorted(selected - set(CRITERIA))}")
    _echo(out, seed=42, trials=200)
    rows = run_all(selected)
    table = summary_table(rows)
    print(table, file=out)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table + "\n")
    if args.plot:
        from .plotting import plot_verify

        plot_verify(rows, args.plot)
    return 0 if all(r.passed for r in rows) else 1


COMMANDS = {
    "transform": cmd_transform,
    "certify": cmd_certify,
    "scan": cmd_scan,
    "moments": cmd_moments,
    "catalog": cmd_catalog,
    "verify": cmd_verify,
}


def dispatch(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
        return COMMANDS[args.command](args, out)
    except (InputError, ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2
    except NumericError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 3


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
