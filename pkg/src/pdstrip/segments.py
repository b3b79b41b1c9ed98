"""Density kinds and atomic series that make up a measure descriptor.

Every kind knows three things about itself: where its tilted mass
``int e^{-yt} |density|`` is finite (``finiteness``), how much mass lies
beyond a cut point (``tail_bound``), and how to integrate
``t^k e^{izt} density(t)`` to a requested absolute tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import MalformedDescriptor, ToleranceNotMet
from .quadrature import (
    adaptive_gk,
    jacobi_rule,
    legendre_rule,
    lower_exp_moment,
    panel_edges,
    upper_exp_moment,
)
from .series import LogPower, em_sawtooth_tail, em_sum_tail

INF = math.inf
_EPS = np.finfo(float).eps


def _phi(c, delta):
    """``(e^{c delta} - 1) / c`` with the removable singularity at ``c = 0``."""
    c = np.asarray(c, dtype=complex)
    delta = np.asarray(delta, dtype=float)
    cd = c * delta
    small = np.abs(cd) < 1e-5
    safe_c = np.where(small, 1.0, c)
    series = delta * (1 + cd / 2 + cd * cd / 6)
    return np.where(small, series, np.expm1(cd) / safe_c)


@dataclass(frozen=True, kw_only=True)
class DensitySegment:
    lo: float
    hi: float
    scale: float = 1.0

    kind: ClassVar[str] = ""
    intrinsic_sign: ClassVar[int] = 1

    def __post_init__(self):
        if not (isinstance(self.lo, float) and isinstance(self.hi, float)):
            object.__setattr__(self, "lo", float(self.lo))
            object.__setattr__(self, "hi", float(self.hi))
        if not self.lo < self.hi:
            raise MalformedDescriptor(f"{self.kind}: need lo < hi, got ({self.lo}, {self.hi})")
        if not math.isfinite(self.scale):
            raise MalformedDescriptor(f"{self.kind}: non-finite scale")
        self._validate()

    def _validate(self):
        pass

    # -- description -------------------------------------------------
    def params(self) -> dict:
        return {}

    def to_json(self) -> dict:
        params = self.params()
        if self.scale != 1.0:
            params["scale"] = self.scale
        from .strips import format_ext_real

        return {
            "lo": format_ext_real(self.lo),
            "hi": format_ext_real(self.hi),
            "kind": self.kind,
            "params": params,
        }

    @property
    def sign(self) -> int:
        if self.scale == 0:
            return 0
        return int(np.sign(self.scale)) * self.intrinsic_sign

    def finiteness(self) -> tuple[float, float]:
        raise NotImplementedError

    def kernel(self, t, w):
        """Unscaled ``density(t) * exp(w t)`` for ``t`` inside the support."""
        raise NotImplementedError

    def density(self, t):
        t = np.asarray(t, dtype=float)
        inside = (t >= self.lo) & (t < self.hi)  # half-open: adjacent segments share no point
        out = np.zeros(t.shape)
        if inside.any():
            with np.errstate(all="ignore"):
                out[inside] = self.scale * np.real(self.kernel(t[inside], 0.0))
        return out

    def breakpoints(self) -> tuple:
        return ()

    # -- tails ---------------------------------------------------------
    def tail_bound(self, y: float, T: float, side: str, power: int = 0) -> float:
        """Bound on ``int |t|^power |density| e^{-yt}`` beyond ``T``.

        ``side='right'`` covers ``(T, hi)``, ``side='left'`` covers ``(lo, T)``.
        Returns ``inf`` where the envelope is not valid.
        """
        return INF

    def cut(self, y: float, side: str, eps: float, power: int = 0):
        """Smallest (approximately) cut ``T`` with tail mass below ``eps``."""
        sgn = 1.0 if side == "right" else -1.0
        edge = self.lo if side == "right" else self.hi
        start = 0.0 if math.isinf(edge) else sgn * max(sgn * edge, 0.0)
        bound = lambda T: abs(self.scale) * self.tail_bound(y, T, side, power)
        if self.scale == 0:
            return start, 0.0
        inner, T = start, start
        step = 1.0
        while not bound(T) <= eps:
            inner = T
            T = start + sgn * step
            step *= 2.0
            if step > 1e7:
                raise ToleranceNotMet(f"{self.kind}: no tail cut reaches eps={eps:g} at y={y}")
        if T == start:
            return T, bound(T)
        for _ in range(60):
            mid = 0.5 * (inner + T)
            if bound(mid) <= eps:
                T = mid
            else:
                inner = mid
            if abs(T - inner) < 1e-12 * max(1.0, abs(T)):
                break
        return T, bound(T)

    # -- integration ---------------------------------------------------
    def integrate(self, z: complex, k: int, tol: float):
        """``scale * int t^k e^{izt} density(t) dt``; returns ``(value, err, work)``."""
        if self.scale == 0:
            return 0j, 0.0, 0
        z = complex(z)
        tol_u = tol / abs(self.scale)
        y = z.imag
        w = 1j * z
        lo, hi, err = self.lo, self.hi, 0.0
        if math.isinf(lo):
            lo, e = self.cut(y, "left", tol / 4, k)
            err += e / abs(self.scale)
        if math.isinf(hi):
            hi, e = self.cut(y, "right", tol / 4, k)
            err += e / abs(self.scale)
        if hi <= lo:
            return 0j, err * abs(self.scale), 0
        width = 1.0 if z.real == 0 else min(1.0, math.pi / abs(z.real))
        edges = panel_edges(lo, hi, width)
        extra = [p for p in self.breakpoints() if lo < p < hi]
        if extra:
            edges = np.unique(np.concatenate([edges, extra]))

        def f(t):
            with np.errstate(all="ignore"):
                v = self.kernel(t, w)
            return v * t**k if k else v

        value, qerr, work, _ = adaptive_gk(f, edges, max(tol_u - err, tol_u / 2))
        return self.scale * value, abs(self.scale) * (qerr + err), work


def _exp_tail_right(y, a, T, power):
    # int_T^inf t^p e^{-(y-a)t}, valid for T >= 0 and y > a
    r = y - a
    if T < 0 or r <= 0:
        return INF
    return float(upper_exp_moment(power, r, T))


def _exp_tail_left(y, a, T, power):
    # int_{-inf}^T |t|^p e^{(a-y)t}, valid for T <= 0 and a > y
    r = a - y
    if T > 0 or r <= 0:
        return INF
    return float(upper_exp_moment(power, r, -T))


def _sample_sign(seg: DensitySegment) -> int:
    lo = seg.lo if math.isfinite(seg.lo) else min(seg.hi, 0.0) - 40.0
    hi = seg.hi if math.isfinite(seg.hi) else max(seg.lo, 0.0) + 40.0
    t = np.linspace(lo, hi, 403)[1:-1]
    with np.errstate(all="ignore"):
        v = np.real(seg.kernel(t, 0.0))
    v = v[np.isfinite(v)]
    scale = np.max(np.abs(v)) if v.size else 0.0
    pos = np.any(v > 1e-12 * scale)
    neg = np.any(v < -1e-12 * scale)
    if pos and neg:
        return 0
    return 1 if pos else (-1 if neg else 0)


@dataclass(frozen=True, kw_only=True)
class ExpPoly(DensitySegment):
    """``sum c * t^k * e^{a t}`` over the support."""

    terms: tuple = ()
    kind: ClassVar[str] = "exp_poly"

    def _validate(self):
        if not self.terms:
            raise MalformedDescriptor("exp_poly: needs at least one term")
        clean = []
        for term in self.terms:
            c, k, a = term
            if int(k) != k or k < 0:
                raise MalformedDescriptor(f"exp_poly: power k must be a natural number, got {k}")
            clean.append((float(c), int(k), float(a)))
        object.__setattr__(self, "terms", tuple(clean))
        sgn = _sample_sign(self)
        if sgn == 0 and any(c != 0 for c, _, _ in self.terms):
            raise MalformedDescriptor("exp_poly: density changes sign on its support")
        object.__setattr__(self, "_sign", sgn)
        ylo, yhi = self.finiteness()
        if not ylo < yhi:
            raise MalformedDescriptor("exp_poly: empty finiteness interval")

    @property
    def intrinsic_sign(self):  # type: ignore[override]
        return self._sign

    def params(self):
        return {"terms": [{"c": c, "k": k, "a": a} for c, k, a in self.terms]}

    def finiteness(self):
        ylo, yhi = -INF, INF
        active = [a for c, _, a in self.terms if c != 0] or [a for _, _, a in self.terms]
        if math.isinf(self.hi):
            ylo = max(active)
        if math.isinf(self.lo):
            yhi = min(active)
        return ylo, yhi

    def kernel(self, t, w):
        out = 0
        for c, k, a in self.terms:
            term = c * np.exp((a + w) * t)
            out = out + (term * t**k if k else term)
        return out

    def tail_bound(self, y, T, side, power=0):
        fn = _exp_tail_right if side == "right" else _exp_tail_left
        total = 0.0
        for c, k, a in self.terms:
            if c:
                total += abs(c) * fn(y, a, T, power + k)
        return total


@dataclass(frozen=True, kw_only=True)
class SechWeight(DensitySegment):
    """``c * e^{a t} / cosh t``."""

    c: float = 1.0
    a: float = 0.0
    kind: ClassVar[str] = "sech_weight"

    @property
    def intrinsic_sign(self):  # type: ignore[override]
        return int(np.sign(self.c))

    def params(self):
        return {"c": self.c, "a": self.a}

    def finiteness(self):
        ylo = self.a - 1 if math.isinf(self.hi) else -INF
        yhi = self.a + 1 if math.isinf(self.lo) else INF
        return ylo, yhi

    def kernel(self, t, w):
        at = np.abs(t)
        return 2 * self.c * np.exp((self.a + w) * t - at) / (1 + np.exp(-2 * at))

    def tail_bound(self, y, T, side, power=0):
        if side == "right":
            return 2 * abs(self.c) * _exp_tail_right(y, self.a - 1, T, power)
        return 2 * abs(self.c) * _exp_tail_left(y, self.a + 1, T, power)


@dataclass(frozen=True, kw_only=True)
class Gumbel(DensitySegment):
    """``exp(-e^{-t})``; its tilted mass at ``y`` is Gamma(y)."""

    kind: ClassVar[str] = "gumbel"

    def finiteness(self):
        return (0.0 if math.isinf(self.hi) else -INF), INF

    def kernel(self, t, w):
        return np.exp(-np.exp(-t) + w * t)

    def tail_bound(self, y, T, side, power=0):
        if side == "right":
            return _exp_tail_right(y, 0.0, T, power)
        if T > 0:
            return INF
        U = math.exp(-T) if T > -700 else INF
        if U < 2 * (power + abs(y - 1)) + 3:
            return INF
        if math.isinf(U):
            return 0.0
        log_b = math.log(2) + power * math.log(max(math.log(U), 1e-300)) + (y - 1) * math.log(U) - U
        return math.exp(log_b)


@dataclass(frozen=True, kw_only=True)
class GammaTail(DensitySegment):
    """``sign * sum_{m > n} (-1)^m e^{-m t} / m!``.

    Equals ``sign * (exp(-u) - sum_{m<=n} (-u)^m / m!)`` with ``u = e^{-t}``.
    """

    n: int = 0
    sgn: int = 1
    kind: ClassVar[str] = "gamma_tail"
    _series_terms: ClassVar[int] = 30

    def _validate(self):
        if int(self.n) != self.n or self.n < 0:
            raise MalformedDescriptor(f"gamma_tail: n must be a natural number, got {self.n}")
        if self.sgn not in (1, -1):
            raise MalformedDescriptor(f"gamma_tail: sign must be +1 or -1, got {self.sgn}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def intrinsic_sign(self):  # type: ignore[override]
        return self.sgn * (-1) ** (self.n + 1)

    def params(self):
        return {"n": self.n, "sign": self.sgn}

    def finiteness(self):
        ylo = -self.n - 1.0 if math.isinf(self.hi) else -INF
        yhi = -float(self.n) if math.isinf(self.lo) else INF
        return ylo, yhi

    def kernel(self, t, w):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        near = t > -math.log(2.0)  # u < 2: alternating series converges fast
        if near.any():
            tn = t[near]
            acc = np.zeros(tn.shape, dtype=complex)
            for m in range(self.n + 1 + self._series_terms, self.n, -1):
                acc += (-1) ** m / math.factorial(m) * np.exp((w - m) * tn)
            out[near] = acc
        far = ~near
        if far.any():
            tf = t[far]
            acc = np.exp(-np.exp(-tf) + w * tf)
            for m in range(self.n + 1):
                acc = acc - (-1) ** m / math.factorial(m) * np.exp((w - m) * tf)
            out[far] = acc
        return self.sgn * out

    def tail_bound(self, y, T, side, power=0):
        n = self.n
        if side == "right":
            return _exp_tail_right(y, -(n + 1.0), T, power) / math.factorial(n + 1)
        if T > -math.log(max(2 * n, 2)):
            return INF
        return 3.0 / math.factorial(n) * _exp_tail_left(y, -float(n), T, power)


@dataclass(frozen=True, kw_only=True)
class BesselCore(DensitySegment):
    """``(1 - t^2)^{alpha - 1/2} / (2^alpha sqrt(pi) Gamma(alpha + 1/2))`` on [-1, 1].

    Integrated with Gauss-Jacobi rules so the endpoint singularity for
    ``alpha < 1/2`` lives in the weight, not the integrand.
    """

    alpha: float = 0.0
    kind: ClassVar[str] = "bessel_core"

    def _validate(self):
        if not self.alpha > -0.5:
            raise MalformedDescriptor(f"bessel_core: alpha must exceed -1/2, got {self.alpha}")
        if (self.lo, self.hi) != (-1.0, 1.0):
            raise MalformedDescriptor("bessel_core: support must be [-1, 1]")

    @property
    def norm(self) -> float:
        a = self.alpha
        return 1.0 / (2**a * math.sqrt(math.pi) * math.gamma(a + 0.5))

    def params(self):
        return {"alpha": self.alpha}

    def finiteness(self):
        return -INF, INF

    def kernel(self, t, w):
        return self.norm * (1 - t * t) ** (self.alpha - 0.5) * np.exp(w * t)

    def tail_bound(self, y, T, side, power=0):
        return 0.0

    def integrate(self, z, k, tol):
        if self.scale == 0:
            return 0j, 0.0, 0
        z = complex(z)
        beta = self.alpha - 0.5
        c = self.scale * self.norm
        prev = None
        work = 0
        n = 32
        while n <= 4096:
            x, wts = jacobi_rule(n, beta)
            terms = wts * np.exp(1j * z * x) * (x**k if k else 1.0)
            q = c * terms.sum()
            work += n
            if prev is not None:
                err = abs(q - prev) + 50 * _EPS * abs(c) * np.abs(terms).sum()
                if err <= tol:
                    return complex(q), float(err), work
            prev = q
            n *= 2
        raise ToleranceNotMet(f"bessel_core: Gauss-Jacobi did not reach tol={tol:g}")


@dataclass(frozen=True, kw_only=True)
class FracExp(DensitySegment):
    """Fractional part ``{e^t}``.

    Never handed to generic quadrature: each breakpoint piece
    ``[ln n, ln(n+1))`` is integrated on its own (closed form for the
    plain transform) and the far tail goes through Euler-Maclaurin.
    """

    kind: ClassVar[str] = "frac_exp"
    max_pieces: ClassVar[int] = 2_000_000

    def _validate(self):
        if math.isfinite(self.hi) and self.hi > math.log(self.max_pieces):
            raise MalformedDescriptor("frac_exp: finite upper end too large; use +inf")

    def finiteness(self):
        ylo = 0.0 if math.isinf(self.hi) else -INF
        yhi = 1.0 if math.isinf(self.lo) else INF
        return ylo, yhi

    def kernel(self, t, w):
        e = np.exp(t)
        return (e - np.floor(e)) * np.exp(w * t)

    def breakpoints(self):
        return ()

    def tail_bound(self, y, T, side, power=0):
        # {e^t} <= min(e^t, 1)
        if side == "right":
            return _exp_tail_right(y, 0.0, T, power)
        return _exp_tail_left(y, 1.0, T, power)

    def integrate(self, z, k, tol):
        if self.scale == 0:
            return 0j, 0.0, 0
        z = complex(z)
        s = -1j * z  # e^{izt} = e^{-st}
        tol_u = tol / abs(self.scale)
        value, err, work = 0j, 0.0, 0

        # t < 0: {e^t} = e^t
        if self.lo < 0:
            b = min(self.hi, 0.0)
            if math.isinf(self.lo):
                value += complex(lower_exp_moment(k, 1 - s, b))
                work += 1
            else:
                f = lambda t: t**k * np.exp((1 - s) * t)
                v, e, n, _ = adaptive_gk(f, panel_edges(self.lo, b, 1.0), tol_u / 4)
                value, err, work = value + v, err + e, work + n

        if self.hi > 0:
            u0 = math.exp(max(self.lo, 0.0))
            u1 = math.exp(self.hi) if math.isfinite(self.hi) else INF
            first = int(math.floor(u0))
            if math.isinf(u1):
                N = max(first + 1, 30 + int(math.ceil(abs(s))) + 4 * k)
                while True:
                    tail, bound, _ = em_sawtooth_tail(LogPower.monomial(s + 1, k), N, tol_u / 4)
                    if bound <= tol_u / 4 or N > 10**5:
                        break
                    N *= 2
                v, e, n = self._pieces(s, k, first, N, u0, INF)
                value += v + tail
                err += e + bound
                work += n + N
            else:
                last = int(math.ceil(u1))
                v, e, n = self._pieces(s, k, first, last, u0, u1)
                value, err, work = value + v, err + e, work + n
        if err > tol_u:
            raise ToleranceNotMet(f"frac_exp: error {err:g} above tol {tol_u:g}")
        return self.scale * value, abs(self.scale) * err, work

    @staticmethod
    def _pieces(s, k, first, stop, u0, u1):
        """Pieces ``n = first .. stop-1`` clipped to ``[u0, u1]``."""
        n = np.arange(first, stop, dtype=float)
        if n.size == 0:
            return 0j, 0.0, 0
        ua = np.maximum(n, u0)
        ub = np.minimum(n + 1, u1)
        keep = ub > ua
        n, ua, ub = n[keep], ua[keep], ub[keep]
        a = np.log(ua)
        delta = np.log1p((ub - ua) / ua)
        if k == 0:
            lead = np.exp((1 - s) * a)
            first_part = lead * _phi(1 - s, delta)
            second = n * np.exp(-s * a) * _phi(-s, delta)
            pieces = first_part - second
            err = 20 * _EPS * float(np.sum(np.abs(first_part) + np.abs(second)))
            return complex(pieces.sum()), err, int(n.size)
        # t^k weighting: Gauss-Legendre inside each smooth piece
        results = []
        for m in (20, 30):
            x, wts = legendre_rule(m)
            t = a[:, None] + 0.5 * delta[:, None] * (x[None, :] + 1)
            f = (np.exp(t) - n[:, None]) * np.exp(-s * t) * t**k
            results.append((0.5 * delta * (f @ wts)).sum())
            mag = float((0.5 * delta * (np.abs(f) @ wts)).sum())
        err = abs(results[1] - results[0]) + 100 * _EPS * mag
        return complex(results[1]), err, int(n.size) * 50


@dataclass(frozen=True, kw_only=True)
class Table(DensitySegment):
    """Sampled density with monotone cubic (PCHIP) interpolation; zero outside."""

    t: tuple = ()
    values: tuple = ()
    kind: ClassVar[str] = "table"

    def _validate(self):
        t = np.asarray(self.t, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.size < 2 or t.shape != v.shape:
            raise MalformedDescriptor("table: t and values must be equal-length arrays (>= 2)")
        if np.any(np.diff(t) <= 0):
            raise MalformedDescriptor("table: sample grid must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise MalformedDescriptor("table: non-finite samples")
        if (t[0], t[-1]) != (self.lo, self.hi):
            raise MalformedDescriptor("table: lo/hi must equal the first/last grid point")
        object.__setattr__(self, "t", tuple(t.tolist()))
        object.__setattr__(self, "values", tuple(v.tolist()))
        object.__setattr__(self, "_interp", PchipInterpolator(t, v, extrapolate=False))
        pos, neg = np.any(v > 0), np.any(v < 0)
        object.__setattr__(self, "_sign", 0 if (pos and neg) else (1 if pos else (-1 if neg else 0)))

    @property
    def intrinsic_sign(self):  # type: ignore[override]
        return self._sign

    def params(self):
        return {"t": list(self.t), "values": list(self.values)}

    def finiteness(self):
        return -INF, INF

    def kernel(self, t, w):
        return np.nan_to_num(self._interp(t)) * np.exp(w * t)

    def tail_bound(self, y, T, side, power=0):
        return 0.0

    def integrate(self, z, k, tol):
        if self.scale == 0:
            return 0j, 0.0, 0
        z = complex(z)
        grid = np.asarray(self.t)
        if grid.size > 4001:
            grid = grid[:: int(math.ceil(grid.size / 4000))]
            grid = np.unique(np.concatenate([grid, [self.t[-1]]]))
        w = 1j * z
        f = lambda t: self.kernel(t, w) * (t**k if k else 1.0)
        v, e, n, _ = adaptive_gk(f, grid, tol / abs(self.scale))
        return self.scale * v, abs(self.scale) * e, n


SEGMENT_KINDS = {
    cls.kind: cls for cls in (ExpPoly, SechWeight, Gumbel, GammaTail, BesselCore, FracExp, Table)
}


# ---------------------------------------------------------------------------
# atoms


@dataclass(frozen=True, kw_only=True)
class AtomSeries:
    scale: float = 1.0
    kind: ClassVar[str] = ""

    @property
    def sign(self) -> int:
        return int(np.sign(self.scale))

    def to_json(self) -> dict:
        params = self.params()
        if self.scale != 1.0:
            params["scale"] = self.scale
        return {"kind": self.kind, "params": params}


@dataclass(frozen=True, kw_only=True)
class FiniteAtoms(AtomSeries):
    locations: tuple = ()
    weights: tuple = ()
    kind: ClassVar[str] = "finite_list"

    def __post_init__(self):
        loc = np.asarray(self.locations, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        if loc.shape != wts.shape or loc.ndim != 1:
            raise MalformedDescriptor("finite_list: locations and weights must match")
        if np.any(np.diff(loc) <= 0):
            raise MalformedDescriptor("finite_list: locations must be strictly increasing")
        if np.any(wts < 0) or not np.all(np.isfinite(wts)) or not np.all(np.isfinite(loc)):
            raise MalformedDescriptor("finite_list: weights must be finite and non-negative")
        object.__setattr__(self, "locations", tuple(loc.tolist()))
        object.__setattr__(self, "weights", tuple(wts.tolist()))

    def params(self):
        return {"locations": list(self.locations), "weights": list(self.weights)}

    def finiteness(self):
        return -INF, INF

    def tail_count(self, y, eps):
        return len(self.locations)

    def integrate(self, z, k, tol):
        t = np.asarray(self.locations)
        terms = self.scale * np.asarray(self.weights) * np.exp(1j * complex(z) * t) * (t**k if k else 1.0)
        return complex(terms.sum()), 10 * _EPS * float(np.abs(terms).sum()), int(t.size)


@dataclass(frozen=True, kw_only=True)
class LogLattice(AtomSeries):
    """Atoms at ``ln n`` (n >= 1) with weights ``n^{-power}``."""

    power: float = 0.0
    kind: ClassVar[str] = "log_lattice"

    def __post_init__(self):
        if not math.isfinite(self.power):
            raise MalformedDescriptor("log_lattice: power must be finite")

    def params(self):
        return {"power": self.power}

    def finiteness(self):
        return 1.0 - self.power, INF

    def tail_count(self, y: float, eps: float) -> int:
        """N from the integral rule ``sum_{n>N} n^{-q} <= N^{1-q}/(q-1)``."""
        q = self.power + y
        if q <= 1:
            raise ToleranceNotMet("log_lattice: series diverges")
        log_n = (math.log(abs(self.scale) / eps) - math.log(q - 1)) / (q - 1)
        if log_n > 700:
            return 2**1000
        return max(1, int(math.ceil(math.exp(log_n) * (1 + 1e-12))))

    def integrate(self, z, k, tol):
        if self.scale == 0:
            return 0j, 0.0, 0
        z = complex(z)
        w = self.power - 1j * z  # n^{iz} n^{-power} = n^{-w}
        tol_u = tol / abs(self.scale)
        N = 30 + int(math.ceil(abs(w))) + 4 * k
        while True:
            tail, bound, _ = em_sum_tail(LogPower.monomial(w, k), N, tol_u / 2)
            if bound <= tol_u / 2 or N > 10**6:
                break
            N *= 2
        n = np.arange(1, N, dtype=float)
        L = np.log(n)
        terms = np.exp(-w * L) * (L**k if k else 1.0)
        head = terms.sum()
        err = bound + 10 * _EPS * float(np.abs(terms).sum())
        if err > tol_u:
            raise ToleranceNotMet(f"log_lattice: error {err:g} above tol {tol_u:g}")
        return self.scale * complex(head + tail), abs(self.scale) * err, N


ATOM_KINDS = {cls.kind: cls for cls in (FiniteAtoms, LogLattice)}
