"""Acceptance criteria: each check returns rows of (id, expected, observed, tolerance, passed)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import catalog, oracles
from .catalog import frac_exp_full_line
from .certify import (
    COSUM,
    CODIFFERENCE,
    PointSet,
    _gram,
    classify_strip,
    fl_evaluator,
    omega_points,
    psd_verdict,
)
from .engine import LineSamples, fl_derivative, fl_transform, invert_on_line
from .measure import MeasureDescriptor
from .moments import mgf_derivative, moment, moment_from_derivative
from .segments import FracExp
from .strips import Strip

SEED = 20240611


@dataclass(frozen=True)
class Row:
    criterion: str
    check: str
    expected: str
    observed: float | str
    tolerance: float | str
    passed: bool

    def line(self) -> str:
        obs = f"{self.observed:.3e}" if isinstance(self.observed, float) else str(self.observed)
        tol = f"{self.tolerance:.1e}" if isinstance(self.tolerance, float) else str(self.tolerance)
        status = "PASS" if self.passed else "FAIL"
        return f"{self.criterion}\t{self.check}\t{self.expected}\t{obs}\t{tol}\t{status}"


def _rng(tag: int):
    return np.random.default_rng((SEED, tag))


def _rel(a, b) -> float:
    return abs(a - b) / abs(b)


def _strip_points(rng, n, ylo, yhi, xlo, xhi):
    return xlo + (xhi - xlo) * rng.random(n) + 1j * (ylo + (yhi - ylo) * rng.random(n))


def _max_rel(desc, oracle, zs, *, vertical=False, tol=1e-13, rtol=1e-11):
    worst = 0.0
    for w in zs:
        z = 1j * w if vertical else w
        worst = max(worst, _rel(fl_transform(desc, z, tol, rtol=rtol).value, oracle(w)))
    return worst


# 1 ---------------------------------------------------------------------

def criterion_rational() -> list[Row]:
    e = catalog.entry("rational11")
    f = oracles.rational11
    rng = _rng(1)
    rows = []
    central = e.regions[1].descriptor
    err = _max_rel(central, f, _strip_points(rng, 100, -0.9, 0.9, -5, 5))
    rows.append(Row("1", "central strip S(-0.9,0.9), 100 pts", "rel<=1e-8", err, 1e-8, err <= 1e-8))
    for region, (ylo, yhi) in ((e.regions[0], (-4.0, -1.1)), (e.regions[2], (1.1, 4.0))):
        err = _max_rel(region.descriptor, f, _strip_points(rng, 50, ylo, yhi, -5, 5))
        rows.append(Row("1", f"signed strip {region.strip.label()}, 50 pts", "rel<=1e-8", err, 1e-8, err <= 1e-8))
    return rows


# 2 ---------------------------------------------------------------------

def criterion_sech() -> list[Row]:
    e = catalog.entry("sech_half_pi")
    f = oracles.sech_half_pi
    rng = _rng(2)
    rows = []
    for region in e.regions:
        lo, hi = region.strip.lo, region.strip.hi
        centre = 0.5 * (lo + hi)
        shift = round(centre / 4) if region.expected == "pd" else None
        if shift is None:
            continue
        tol = 1e-8 if shift == 0 else 1e-7
        zs = _strip_points(rng, 50, centre - 0.9, centre + 0.9, -3, 3)
        err = _max_rel(region.descriptor, f, zs)
        rows.append(Row("2", f"n={shift} strip {region.strip.label()}, 50 pts", f"rel<={tol:.0e}", err, tol, err <= tol))
    return rows


# 3 ---------------------------------------------------------------------

def criterion_gamma_right() -> list[Row]:
    e = catalog.entry("gamma")
    desc = e.regions[0].descriptor
    rng = _rng(3)
    ss = 0.1 + 9.9 * rng.random(50) + 1j * (-2 + 4 * rng.random(50))
    err = _max_rel(desc, oracles.gamma, ss, vertical=True)
    half = fl_transform(desc, 0.5j, 1e-13).value.real
    deriv = (1j * fl_derivative(desc, 1j, 1, 1e-13).value).real
    return [
        Row("3", "Gamma on T(0.1,10), 50 pts", "rel<=1e-8", err, 1e-8, err <= 1e-8),
        Row("3", "Gamma(1/2)", "1.77245385090552", abs(half - 1.77245385090552), 1e-9, abs(half - 1.77245385090552) <= 1e-9),
        Row("3", "Gamma'(1)", "-0.57721566490153", abs(deriv + 0.57721566490153), 1e-9, abs(deriv + 0.57721566490153) <= 1e-9),
    ]


# 4 ---------------------------------------------------------------------

def criterion_gamma_tail() -> list[Row]:
    e = catalog.entry("gamma", n=0)
    desc = e.regions[1].descriptor
    rng = _rng(4)
    ss = -0.9 + 0.8 * rng.random(20) + 1j * (-2 + 4 * rng.random(20))
    err = _max_rel(desc, oracles.gamma, ss, vertical=True, tol=1e-12)
    v = fl_transform(desc, -0.5j, 1e-12).value.real
    return [
        Row("4", "gamma_tail(0) on T(-0.9,-0.1), 20 pts", "rel<=1e-6", err, 1e-6, err <= 1e-6),
        Row("4", "Gamma(-1/2)", "-3.54490770181103", abs(v + 3.54490770181103), 1e-6, abs(v + 3.54490770181103) <= 1e-6),
    ]


# 5 ---------------------------------------------------------------------

def criterion_zeta_halfplane() -> list[Row]:
    e = catalog.entry("zeta")
    desc = e.regions[0].descriptor
    ys = np.linspace(1.1, 10.0, 20)
    worst, honest = 0.0, True
    for y in ys:
        r = fl_transform(desc, 1j * y, 1e-13)
        ref = oracles.zeta(y)
        worst = max(worst, _rel(r.value, ref))
        honest &= abs(r.value - ref) <= r.abs_err + 4e-16 * abs(ref)
    return [
        Row("5", "zeta atoms on y in [1.1,10], 20 pts", "rel<=1e-8", worst, 1e-8, worst <= 1e-8),
        Row("5", "atom-tail bound covers the error", "all", "all" if honest else "violated", "-", bool(honest)),
    ]


# 6 ---------------------------------------------------------------------

def criterion_zeta_critical() -> list[Row]:
    desc = frac_exp_full_line()
    rng = _rng(6)
    ss = 0.02 + 0.96 * rng.random(20) + 1j * (-20 + 40 * rng.random(20))
    worst = 0.0
    for s in ss:
        v = -s * fl_transform(desc, 1j * s, 1e-12).value
        worst = max(worst, _rel(v, oracles.zeta(s)))
    half = (-0.5 * fl_transform(desc, 0.5j, 1e-12).value).real
    return [
        Row("6", "-s*FL({e^t}) vs zeta, 20 pts in critical strip", "rel<=1e-6", worst, 1e-6, worst <= 1e-6),
        Row("6", "zeta(1/2)", "-1.46035450880959", abs(half + 1.46035450880959), 1e-7, abs(half + 1.46035450880959) <= 1e-7),
    ]


# 7 ---------------------------------------------------------------------

def criterion_bessel() -> list[Row]:
    desc = catalog.entry("bessel_norm").regions[0].descriptor
    rng = _rng(7)
    r = 10 * np.sqrt(rng.random(50))
    zs = r * np.exp(2j * math.pi * rng.random(50))
    worst = 0.0
    for z in zs:
        ref = oracles.bessel_normalized(z)
        v = fl_transform(desc, z, 1e-13, rtol=1e-12).value
        worst = max(worst, abs(v - ref) / max(1.0, abs(ref)))
    root = brentq(lambda x: fl_transform(desc, x, 1e-13).value.real, 2.0, 3.0, xtol=1e-14)
    return [
        Row("7", "J0 on disk |z|<=10, 50 pts", "err/max(1,|J0|)<=1e-8", worst, 1e-8, worst <= 1e-8),
        Row("7", "first zero of J0", "2.40482555769577", abs(root - 2.40482555769577), 1e-8, abs(root - 2.40482555769577) <= 1e-8),
    ]


# 8 ---------------------------------------------------------------------

def criterion_verdicts(trials: int = 200, seed: int = 42) -> list[Row]:
    rows = []
    for name in catalog.NAMES:
        e = catalog.entry(name)
        for region in e.regions:
            routes = [("oracle", e.evaluator())]
            if region.descriptor is not None:
                routes.append(("measure", fl_evaluator(region.descriptor, e.orientation)))
            for route, ev in routes:
                got = classify_strip(ev, region.strip, e.mode, trials, seed).mode
                rows.append(Row("8", f"{name} {region.strip.label()} via {route}", region.expected, got, "exact", got == region.expected))
    return rows


# 9 ---------------------------------------------------------------------

CHAIN_REGIONS = (
    ("rational11", 1), ("sech_half_pi", 2), ("gamma", 0), ("bessel_norm", 0),
    ("zeta", 0), ("u_func", 0), ("zed", 0),
)


def chain_triples(count: int = 20):
    rng = _rng(9)
    out = []
    for i in range(count):
        name, idx = CHAIN_REGIONS[i % len(CHAIN_REGIONS)]
        region = catalog.entry(name).regions[idx]
        lo, hi = region.descriptor.finiteness
        lo, hi = max(lo, -3.0), min(hi, lo + 4.0 if math.isfinite(lo) else 3.0)
        y = lo + (hi - lo) * (0.15 + 0.7 * rng.random())
        n = int(rng.integers(0, 5))
        out.append((name, region, float(y), n))
    return out


def criterion_moments() -> list[Row]:
    worst = 0.0
    for name, region, y, n in chain_triples():
        d = region.descriptor
        a = moment(d, y, n, 1e-11, rtol=1e-12).value
        b = moment_from_derivative(d, y, n, 1e-11, rtol=1e-12).value
        c = mgf_derivative(d, y, n).value
        scale = max(1.0, abs(a))
        worst = max(worst, abs(a - b) / scale, abs(a - c) / scale)
    zeta = catalog.entry("zeta").regions[0].descriptor
    m12 = moment(zeta, 2.0, 1, 1e-12).value
    return [
        Row("9", "three routes to M_n^y, 20 triples", "rel<=1e-5", worst, 1e-5, worst <= 1e-5),
        Row("9", "zeta M_1^2", "0.93754825431584", abs(m12 - 0.93754825431584), 1e-6, abs(m12 - 0.93754825431584) <= 1e-6),
    ]


# 10 --------------------------------------------------------------------

INVERSION_X = 400.0
INVERSION_H = 0.05


def criterion_inversion() -> list[Row]:
    f = oracles.rational11
    t = np.linspace(-10, 10, 2001)
    inv0 = invert_on_line(LineSamples.from_function(f, 0.0, INVERSION_X, INVERSION_H), support=(-10, 10))
    inv1 = invert_on_line(LineSamples.from_function(f, 0.5, INVERSION_X, INVERSION_H), support=(-10, 10))
    d0 = inv0.segment.density(t)
    d1 = inv1.segment.density(t)
    sup = float(np.max(np.abs(d0 - 0.5 * np.exp(-np.abs(t)))))
    cross = float(np.max(np.abs(d0 - d1 * np.exp(0.5 * t))))
    return [
        Row("10", "density from y=0 line vs e^{-|t|}/2 on [-10,10]", "sup<=1e-3", sup, 1e-3, sup <= 1e-3),
        Row("10", "cross-line factor e^{0.5t}, y=0 vs y=0.5", "sup<=5e-3", cross, 5e-3, cross <= 5e-3),
    ]


# 11 --------------------------------------------------------------------

PD_FAMILIES = {
    # strip shared by every member, mode, entries (name, region index)
    "horizontal": (Strip.horizontal(-1, 1), CODIFFERENCE, (("rational11", 1), ("sech_half_pi", 2), ("bessel_norm", 0))),
    "vertical": (Strip.vertical(1, math.inf), COSUM, (("gamma", 0), ("zeta", 0), ("u_func", 0))),
}


def criterion_algebra(samples: int = 100) -> list[Row]:
    rows = []
    for family, (strip, mode, members) in PD_FAMILIES.items():
        entries = [catalog.entry(n) for n, _ in members]
        evs = [e.evaluator() for e in entries]
        rng = _rng(11)
        schur_ok = cone_ok = True
        for trial in range(samples):
            size = int(rng.integers(2, 7))
            pts = PointSet(omega_points(strip, size, trial, SEED), mode, strip)
            grams = [_gram(ev, pts) for ev in evs]
            for i in range(len(grams)):
                for j in range(i, len(grams)):
                    (A, ea), (B, eb) = grams[i], grams[j]
                    err = np.max(np.abs(A)) * eb + np.max(np.abs(B)) * ea + ea * eb
                    schur_ok &= psd_verdict(A * B, err).verdict == "psd"
            w = rng.random(len(grams))
            C = sum(wi * G for wi, (G, _) in zip(w, grams))
            cerr = sum(wi * e for wi, (_, e) in zip(w, grams))
            cone_ok &= psd_verdict(C, cerr).verdict == "psd"
        rows.append(Row("11", f"Schur product closure ({family})", "psd", "psd" if schur_ok else "violated", "-", bool(schur_ok)))
        rows.append(Row("11", f"cone closure ({family})", "psd", "psd" if cone_ok else "violated", "-", bool(cone_ok)))

        for (name, idx), e in zip(members, entries):
            region = e.regions[idx]
            rows.extend(_pointwise_properties(e, region, samples))
    return rows


def _pointwise_properties(e, region, samples) -> list[Row]:
    rng = _rng(111)
    desc = region.descriptor
    lo, hi = region.strip.finite_window()
    lo, hi = max(lo, region.strip.lo), hi
    width = hi - lo
    vertical = e.orientation == "vertical"
    conj_ok = diag_ok = mod_ok = True
    worst_mod = -math.inf
    for _ in range(samples):
        y = lo + width * (0.1 + 0.8 * rng.random())
        x = 6 * rng.random() - 3
        beta = min(y - lo, hi - y) * 0.9 * rng.random()
        # transform-side checks in the horizontal variable z = x + iy
        z = complex(x, y)
        r1 = fl_transform(desc, z, 1e-11, rtol=1e-12)
        r2 = fl_transform(desc, complex(-x, y), 1e-11, rtol=1e-12)
        conj_ok &= abs(r2.value - r1.value.conjugate()) <= 2 * (r1.abs_err + r2.abs_err)
        d = fl_transform(desc, 1j * y, 1e-11, rtol=1e-12)
        diag_ok &= abs(d.value.imag) <= 2 * d.abs_err and d.value.real >= -2 * d.abs_err
        # modulus bound from the oracle, in the entry's own variable
        if vertical:
            w, wm, wp = complex(y, x), y - beta, y + beta
        else:
            w, wm, wp = z, 1j * (y - beta), 1j * (y + beta)
        fv, fm, fp = e.oracle(w), e.oracle(wm), e.oracle(wp)
        err = 1e-12 * (abs(fv) ** 2 + abs(fm * fp))
        bound = (fm * fp).real
        worst_mod = max(worst_mod, abs(fv) ** 2 / bound)
        mod_ok &= abs(fv) ** 2 - bound <= 10 * err
    label = f"{e.name} {region.strip.label()}"
    return [
        Row("11", f"conjugate symmetry {label}", "|f(-x+iy)-conj f(x+iy)|<=2err", "ok" if conj_ok else "violated", "2*abs_err", bool(conj_ok)),
        Row("11", f"diagonal reality {label}", "f(iy) real, >=0", "ok" if diag_ok else "violated", "2*abs_err", bool(diag_ok)),
        Row("11", f"modulus bound {label}", "max |f|^2/(f(i(y-b))f(i(y+b))) <= 1", worst_mod, "10*entry_err", bool(mod_ok)),
    ]


CRITERIA = {
    "1": ("rational fidelity", criterion_rational),
    "2": ("sech fidelity", criterion_sech),
    "3": ("Gamma right half-plane", criterion_gamma_right),
    "4": ("Gamma negative strip", criterion_gamma_tail),
    "5": ("zeta half-plane", criterion_zeta_halfplane),
    "6": ("zeta critical strip", criterion_zeta_critical),
    "7": ("Bessel", criterion_bessel),
    "8": ("definiteness verdicts", criterion_verdicts),
    "9": ("moment identity chain", criterion_moments),
    "10": ("inversion roundtrip", criterion_inversion),
    "11": ("algebraic properties", criterion_algebra),
}


def run_all(selected=None) -> list[Row]:
    rows = []
    for cid, (_, fn) in CRITERIA.items():
        if selected is None or cid in selected:
            rows.extend(fn())
    return rows


def summary_table(rows) -> str:
    head = "criterion\tcheck\texpected\tobserved\ttolerance\tresult"
    return "\n".join([head, *(r.line() for r in rows)])
