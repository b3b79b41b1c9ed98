"""Fourier-Laplace transforms ``f(z) = int e^{izt} dmu(t)`` with error bounds.

The horizontal convention is used throughout: ``Im z`` must lie in the
measure's finiteness interval. Vertical-strip functions ``g(s)`` are
reached through ``z = i s``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientSamples, MalformedDescriptor, PdStripError, ToleranceNotMet
from .measure import MeasureDescriptor, TiltedView
from .segments import LogLattice, Table
from .strips import Strip

MAX_DERIVATIVE = 20


@dataclass(frozen=True)
class QuadResult:
    value: complex
    abs_err: float
    work: int = 0

    @property
    def real(self) -> float:
        return self.value.real


def _unwrap(mu, z):
    if isinstance(mu, TiltedView):
        return mu.base, complex(z) + 1j * mu.y
    return mu, complex(z)


def _raw_moment(mu: MeasureDescriptor, z: complex, k: int, tol: float) -> QuadResult:
    mu.check(z.imag)
    parts = (*mu.segments, *mu.atoms)
    share = tol / len(parts)
    value, err, work = 0j, 0.0, 0
    for part in parts:
        v, e, n = part.integrate(z, k, share)
        value += v
        err += e
        work += n
    if not err <= tol * (1 + 1e-9):
        raise ToleranceNotMet(f"error bound {err:g} exceeds tol {tol:g} at z={z}")
    return QuadResult(complex(value), float(err), int(work))


def moment_transform(mu, z, k: int = 0, tol: float = 1e-10, *, rtol: float = 0.0) -> QuadResult:
    """``int t^k e^{izt} dmu(t)``.

    With ``rtol > 0`` the absolute target is relaxed to
    ``max(tol, rtol * |value|)`` using a coarse first pass.
    """
    if not 0 <= k <= MAX_DERIVATIVE:
        raise ValueError(f"order must be in 0..{MAX_DERIVATIVE}, got {k}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    base, z = _unwrap(mu, z)
    if rtol > 0:
        try:
            coarse = _raw_moment(base, z, k, max(tol, 1e-4))
            tol = max(tol, rtol * abs(coarse.value))
        except ToleranceNotMet:
            pass
    return _raw_moment(base, z, k, tol)


def fl_transform(mu, z, tol: float = 1e-10, *, rtol: float = 0.0) -> QuadResult:
    return moment_transform(mu, z, 0, tol, rtol=rtol)


def fl_derivative(mu, z, n: int, tol: float = 1e-10, *, rtol: float = 0.0) -> QuadResult:
    """``d^n/dz^n FL(mu)(z) = i^n int t^n e^{izt} dmu``."""
    r = moment_transform(mu, z, n, tol, rtol=rtol)
    return QuadResult(1j**n * r.value, r.abs_err, r.work)


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class GridSpec:
    strip: Strip
    re_range: tuple
    im_range: tuple
    counts: tuple

    def __post_init__(self):
        n_re, n_im = self.counts
        if n_re < 1 or n_im < 1:
            raise MalformedDescriptor("grid counts must be positive")
        for z in self.points():
            if not self.strip.contains(z):
                raise MalformedDescriptor(f"grid point {z} lies outside {self.strip.label()}")

    def points(self):
        n_re, n_im = self.counts
        res = np.linspace(*self.re_range, n_re) if n_re > 1 else [self.re_range[0]]
        ims = np.linspace(*self.im_range, n_im) if n_im > 1 else [self.im_range[0]]
        return [complex(x, y) for y in ims for x in res]


def fl_grid(mu, grid: GridSpec, tol: float = 1e-10, *, rtol: float = 0.0):
    """Row-major ``[(z, QuadResult or the error raised at z)]``."""
    out = []
    for z in grid.points():
        try:
            out.append((z, fl_transform(mu, z, tol, rtol=rtol)))
        except PdStripError as exc:
            out.append((z, exc))
    return out


def grid_csv(results, stream=None) -> str:
    buf = stream if stream is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["re", "im", "value_re", "value_im", "abs_err"])
    fmt = lambda x: format(x, ".17g")
    for z, r in results:
        if isinstance(r, QuadResult):
            row = [z.real, z.imag, r.value.real, r.value.imag, r.abs_err]
        else:
            row = [z.real, z.imag, math.nan, math.nan, math.nan]
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue() if stream is None else ""


# ---------------------------------------------------------------------------
# tails


def tail_cutoff(mu, y: float, eps: float):
    """Cut points ``(T_minus, T_plus)`` and atom count ``N`` for a tail budget ``eps``.

    The budget is split evenly over the unbounded pieces; ``N`` is the
    plain integral-rule count (the engine itself sums far fewer atoms
    and closes the series with Euler-Maclaurin).
    """
    base, z = _unwrap(mu, 1j * y)
    y = z.imag
    base.check(y)
    pieces = []
    for s in base.segments:
        if s.scale == 0:
            continue
        if math.isinf(s.lo):
            pieces.append((s, "left"))
        if math.isinf(s.hi):
            pieces.append((s, "right"))
    lattices = [a for a in base.atoms if isinstance(a, LogLattice) and a.scale != 0]
    count = len(pieces) + len(lattices)
    share = eps / count if count else eps
    t_minus, t_plus = math.inf, -math.inf
    for s in base.segments:
        lo = s.cut(y, "left", share)[0] if math.isinf(s.lo) else s.lo
        hi = s.cut(y, "right", share)[0] if math.isinf(s.hi) else s.hi
        t_minus, t_plus = min(t_minus, lo), max(t_plus, hi)
    N = 0
    for a in base.atoms:
        n_a = a.tail_count(y, share)
        N = max(N, n_a)
        if isinstance(a, LogLattice):
            lo, hi = 0.0, math.log(max(n_a, 1))
        else:
            lo, hi = (a.locations[0], a.locations[-1]) if a.locations else (math.inf, -math.inf)
        t_minus, t_plus = min(t_minus, lo), max(t_plus, hi)
    return t_minus, t_plus, N


# ---------------------------------------------------------------------------
# inversion


@dataclass(frozen=True)
class LineSamples:
    y: float
    xs: tuple
    values: tuple

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        if xs.ndim != 1 or xs.size < 8 or xs.shape != vals.shape:
            raise InsufficientSamples("need at least 8 abscissae with matching values")
        h = np.diff(xs)
        if np.any(h <= 0) or np.ptp(h) > 1e-9 * h.mean():
            raise InsufficientSamples("abscissae must be uniformly spaced and increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", vals)

    @property
    def spacing(self) -> float:
        return float(self.xs[1] - self.xs[0])

    @classmethod
    def from_function(cls, f, y: float, X: float, h: float):
        n = int(round(X / h))
        xs = np.arange(-n, n + 1) * h
        return cls(y, xs, np.array([f(complex(x, y)) for x in xs]))


@dataclass(frozen=True)
class Inversion:
    segment: Table
    sup_err: float  # heuristic: half-window comparison, not a bound
    y: float


def _fourier_sum(xs, vals, weights, t, chunk=256):
    out = np.empty(t.size)
    for i in range(0, t.size, chunk):
        tt = t[i : i + chunk]
        out[i : i + chunk] = np.real(np.exp(-1j * np.outer(tt, xs)) @ (vals * weights))
    return out / (2 * math.pi)


def invert_on_line(samples: LineSamples, window: str = "none", support=None, n_t: int = 2001) -> Inversion:
    """Estimate the tilted density ``dmu_y/dt`` from ``F_y(x)`` on a uniform line grid."""
    if window not in ("none", "hann"):
        raise ValueError(f"unknown window {window!r}")
    xs, vals, h = samples.xs, samples.values, samples.spacing
    X = float(np.max(np.abs(xs)))
    if support is None:
        L = min(0.5 * math.pi / h, 20.0)
        support = (-L, L)
    t = np.linspace(support[0], support[1], n_t)

    def weights(cut):
        w = np.full(xs.size, h)
        inside = np.abs(xs) <= cut * (1 + 1e-12)
        w[~inside] = 0.0
        idx = np.flatnonzero(inside)
        w[idx[0]] *= 0.5
        w[idx[-1]] *= 0.5
        if window == "hann":
            w *= 0.5 * (1 + np.cos(math.pi * np.clip(xs / cut, -1, 1)))
        return w

    full = _fourier_sum(xs, vals, weights(X), t)
    half = _fourier_sum(xs, vals, weights(X / 2), t)
    seg = Table(lo=float(t[0]), hi=float(t[-1]), t=tuple(t), values=tuple(full))
    return Inversion(seg, float(np.max(np.abs(full - half))), samples.y)
