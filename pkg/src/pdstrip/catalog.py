"""Named worked examples: oracle, per-strip representing measures, verdicts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import oracles
from .engine import QuadResult, fl_transform
from .errors import ParamOutOfRange, UnknownEntry
from .measure import MeasureDescriptor, scale_add
from .segments import BesselCore, ExpPoly, FracExp, GammaTail, Gumbel, LogLattice, SechWeight
from .strips import HORIZONTAL, VERTICAL, Strip

INF = math.inf


@dataclass(frozen=True)
class Region:
    strip: Strip
    descriptor: MeasureDescriptor | None
    expected: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict
    orientation: str
    oracle: Callable
    regions: tuple
    poles: tuple = ()
    formula: str = ""

    @property
    def mode(self) -> str:
        return "codifference" if self.orientation == HORIZONTAL else "cosum"

    def region_for(self, w: complex) -> Region:
        """First region whose strip contains ``w`` (in the entry's own variable)."""
        for r in self.regions:
            if r.descriptor is not None and r.strip.contains(w):
                return r
        raise LookupError(f"{self.name}: no represented region contains {w}")

    def represent(self, region: Region, w: complex, tol: float = 1e-10, rtol: float = 0.0) -> QuadResult:
        """Evaluate the entry at ``w`` through the region's measure."""
        z = complex(w) if self.orientation == HORIZONTAL else 1j * complex(w)
        return fl_transform(region.descriptor, z, tol, rtol=rtol)

    def evaluator(self, rel_err: float = 1e-12):
        """Oracle wrapped for Gram construction: ``w -> (value, err)``."""

        def ev(w):
            v = self.oracle(w)
            return v, rel_err * abs(v)

        return ev


# -- building blocks -----------------------------------------------------

def sigma_left(c: float) -> MeasureDescriptor:
    """``e^{ct}`` on ``t < 0``."""
    return MeasureDescriptor((ExpPoly(lo=-INF, hi=0.0, terms=((1.0, 0, c),)),))


def sigma_right(c: float) -> MeasureDescriptor:
    """``e^{ct}`` on ``t >= 0``."""
    return MeasureDescriptor((ExpPoly(lo=0.0, hi=INF, terms=((1.0, 0, c),)),))


def frac_exp_half_line() -> MeasureDescriptor:
    return MeasureDescriptor((FracExp(lo=0.0, hi=INF),))


def frac_exp_full_line() -> MeasureDescriptor:
    return MeasureDescriptor((FracExp(lo=-INF, hi=INF),))


# -- entries -------------------------------------------------------------

def _rational11():
    regions = (
        Region(
            Strip.horizontal(-INF, -1),
            MeasureDescriptor((ExpPoly(lo=-INF, hi=0.0, terms=((0.5, 0, 1.0), (-0.5, 0, -1.0))),)),
            "nd",
        ),
        Region(Strip.horizontal(-1, 1), scale_add(0.5, sigma_left(1.0), 0.5, sigma_right(-1.0)), "pd"),
        Region(
            Strip.horizontal(1, INF),
            MeasureDescriptor((ExpPoly(lo=0.0, hi=INF, terms=((-0.5, 0, 1.0), (0.5, 0, -1.0))),)),
            "nd",
        ),
    )
    return CatalogEntry("rational11", {}, HORIZONTAL, oracles.rational11, regions, (1j, -1j), "1/(1+z^2)")


def _sech_half_pi(n=None):
    ns = (-1, 0, 1) if n is None else (n,)
    if any(k not in (-1, 0, 1) for k in ns):
        raise ParamOutOfRange(f"sech_half_pi: n must be in {{-1, 0, 1}}, got {n}")
    regions = []
    for k in ns:
        regions.append(Region(
            Strip.horizontal(4 * k - 1, 4 * k + 1),
            MeasureDescriptor((SechWeight(lo=-INF, hi=INF, c=1 / math.pi, a=4.0 * k),)),
            "pd",
        ))
        regions.append(Region(
            Strip.horizontal(4 * k + 1, 4 * k + 3),
            MeasureDescriptor((SechWeight(lo=-INF, hi=INF, c=-1 / math.pi, a=2.0 + 4 * k),)),
            "nd",
        ))
    poles = tuple(1j * (2 * m + 1) for m in range(-3, 4))
    params = {} if n is None else {"n": n}
    return CatalogEntry("sech_half_pi", params, HORIZONTAL, oracles.sech_half_pi, tuple(regions), poles, "1/cosh(pi z/2)")


def _gamma(n=None):
    ns = (0, 1, 2) if n is None else (n,)
    if any(k not in (0, 1, 2) for k in ns):
        raise ParamOutOfRange(f"gamma: tail index n must be in {{0, 1, 2}}, got {n}")
    regions = [Region(Strip.vertical(0, INF), MeasureDescriptor((Gumbel(lo=-INF, hi=INF),)), "co_pd")]
    for k in ns:
        regions.append(Region(
            Strip.vertical(-k - 1, -k),
            MeasureDescriptor((GammaTail(lo=-INF, hi=INF, n=k),)),
            "co_nd" if k % 2 == 0 else "co_pd",
        ))
    params = {} if n is None else {"n": n}
    return CatalogEntry("gamma", params, VERTICAL, oracles.gamma, tuple(regions), tuple(-float(k) for k in range(6)), "Gamma(s)")


def _bessel_norm(alpha=0.0):
    alpha = float(alpha)
    if not alpha > -0.5:
        raise ParamOutOfRange(f"bessel_norm: alpha must exceed -1/2, got {alpha}")
    regions = (Region(Strip.horizontal(-INF, INF), MeasureDescriptor((BesselCore(lo=-1.0, hi=1.0, alpha=alpha),)), "pd"),)
    oracle = lambda z: oracles.bessel_normalized(z, alpha)
    return CatalogEntry("bessel_norm", {"alpha": alpha}, HORIZONTAL, oracle, regions, (), "2^a Gamma(a+1) z^-a J_a(z)")


def _zeta():
    regions = (Region(Strip.vertical(1, INF), MeasureDescriptor((), (LogLattice(),)), "co_pd"),)
    return CatalogEntry("zeta", {}, VERTICAL, oracles.zeta, regions, (1.0,), "zeta(s)")


def _u_func():
    regions = (Region(Strip.vertical(0, INF), frac_exp_half_line(), "co_pd"),)
    return CatalogEntry("u_func", {}, VERTICAL, oracles.u_func, regions, (), "int_0^inf {e^t} e^{-st} dt")


def _zed():
    critical = frac_exp_full_line()
    # -floor(e^t) on t >= 0, written as {e^t} - e^t
    right = MeasureDescriptor(
        (FracExp(lo=0.0, hi=INF), ExpPoly(lo=0.0, hi=INF, terms=((-1.0, 0, 1.0),)))
    )
    regions = (
        Region(Strip.vertical(0, 1), critical, "co_pd"),
        Region(Strip.vertical(1, INF), right, "co_nd"),
        Region(Strip.vertical(-INF, 0), None, "indefinite"),
    )
    oracle = lambda s: oracles.zed(s, continuation=True)
    return CatalogEntry("zed", {}, VERTICAL, oracle, regions, (0.0, 1.0), "-zeta(s)/s")


_BUILDERS = {
    "rational11": (_rational11, {}),
    "sech_half_pi": (_sech_half_pi, {"n": "int in {-1,0,1} (optional)"}),
    "gamma": (_gamma, {"n": "int in {0,1,2} (optional)"}),
    "bessel_norm": (_bessel_norm, {"alpha": "float > -1/2 (default 0)"}),
    "zeta": (_zeta, {}),
    "u_func": (_u_func, {}),
    "zed": (_zed, {}),
}

NAMES = tuple(_BUILDERS)


def entry(name: str, params: dict | None = None, **kw) -> CatalogEntry:
    if name not in _BUILDERS:
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}")
    builder, schema = _BUILDERS[name]
    params = {**(params or {}), **kw}
    unknown = set(params) - set(schema)
    if unknown:
        raise ParamOutOfRange(f"{name}: unknown parameters {sorted(unknown)}")
    return builder(**params)


def params_schema(name: str) -> dict:
    return dict(_BUILDERS[name][1])


def reference_eval(name: str, params: dict | None, z) -> complex:
    """Closed-form value of a catalog function (no transform involved)."""
    if name == "zeta":
        return oracles.zeta(z)
    if name == "zed":
        return zed_eval(z)
    return entry(name, params).oracle(z)


def zed_eval(z) -> complex:
    return oracles.zed(z)


def catalog_lines() -> list[str]:
    lines = []
    for name in NAMES:
        e = entry(name)
        schema = params_schema(name)
        schema_txt = ", ".join(f"{k}: {v}" for k, v in schema.items()) or "-"
        regions = "; ".join(f"{r.strip.label()} {r.expected}" for r in e.regions)
        lines.append(f"{name}\t{e.formula}\tparams[{schema_txt}]\t{regions}")
    return lines
