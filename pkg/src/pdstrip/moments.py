"""Moments, characteristic functions and moment generating functions of tilted measures.

For a measure ``mu`` and a tilt ``y`` in its finiteness interval:

* ``M_n^y = int t^n e^{-yt} dmu``
* ``h_y(x) = int e^{ixt} e^{-yt} dmu = FL(mu)(x + iy)``
* ``g_y(u) = int e^{ut} e^{-yt} dmu = weighted_mass(mu, y - u)``

so that ``M_n^y = (-i)^n f^{(n)}(iy) = (-i)^n h_y^{(n)}(0) = g_y^{(n)}(0)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .engine import MAX_DERIVATIVE, fl_derivative, fl_transform, moment_transform
from .errors import Divergent, ToleranceNotMet
from .measure import weighted_mass
from .series import LogPower, _bernoulli_ratios


@dataclass(frozen=True)
class MomentRecord:
    y: float
    n: int
    value: float
    abs_err: float
    method: str = "quadrature"


def moment(mu, y: float, n: int, tol: float = 1e-10, *, rtol: float = 0.0) -> MomentRecord:
    """``int t^n e^{-yt} dmu(t)`` by direct quadrature."""
    r = moment_transform(mu, 1j * float(y), n, tol, rtol=rtol)
    return MomentRecord(float(y), int(n), r.value.real, r.abs_err, "quadrature")


def moment_from_derivative(mu, y: float, n: int, tol: float = 1e-10, *, rtol: float = 0.0) -> MomentRecord:
    """``(-i)^n f^{(n)}(iy)`` from the transform's derivative."""
    r = fl_derivative(mu, 1j * float(y), n, tol, rtol=rtol)
    return MomentRecord(float(y), int(n), ((-1j) ** n * r.value).real, r.abs_err, "derivative")


def cf_eval(mu, y: float, x: float, tol: float = 1e-10) -> complex:
    """Characteristic function ``h_y(x)`` of the tilted measure."""
    return fl_transform(mu, complex(x, y), tol).value


def mgf_eval(mu, y: float, u: float, tol: float = 1e-10, *, rtol: float = 0.0) -> float:
    """Moment generating function ``g_y(u)`` of the tilted measure."""
    mu.check(y)
    mu.check(y - u)
    return weighted_mass(mu, y - u, tol, rtol).value.real


# -- finite differences of the mgf ---------------------------------------

STEP_FACTOR = 0.6

@lru_cache(maxsize=None)
def central_stencil(n: int, order: int = 4) -> tuple[tuple[int, ...], tuple[float, ...]]:
    """Offsets and weights of a central stencil for ``d^n/du^n`` accurate to ``O(h^order)``."""
    p = (n + 1) // 2 + order // 2 - 1
    offsets = np.arange(-p, p + 1)
    V = np.vander(offsets.astype(float), increasing=True).T
    rhs = np.zeros(len(offsets))
    rhs[n] = math.factorial(n)
    w = np.linalg.solve(V, rhs)
    return tuple(int(o) for o in offsets), tuple(float(x) for x in w)


def default_step(n: int, distance: float) -> float:
    """Step balancing the O(h^6) Richardson truncation against cancellation.

    ``distance`` is the gap from ``y`` to the nearest end of the finiteness
    interval; derivatives of the mgf grow like ``distance^{-n}``.
    """
    d = min(distance, 2.0)
    return STEP_FACTOR * d * 1e-15 ** (1.0 / (n + 6))


def mgf_derivative(mu, y: float, n: int, h: float | None = None, rtol: float = 1e-13) -> MomentRecord:
    """``g_y^{(n)}(0)`` by a central stencil with one Richardson step."""
    if n == 0:
        v = mgf_eval(mu, y, 0.0, 1e-300, rtol=rtol)
        return MomentRecord(float(y), 0, v, rtol * abs(v), "mgf")
    lo, hi = mu.finiteness
    distance = min(y - lo, hi - y)
    if h is None:
        h = default_step(n, distance)
    offsets, weights = central_stencil(n)
    if max(abs(o) for o in offsets) * h >= distance:
        raise ValueError(f"step {h} leaves the finiteness interval around y={y}")
    cache = {}

    def g(u):
        if u not in cache:
            cache[u] = mgf_eval(mu, y, u, 1e-300, rtol=rtol)
        return cache[u]

    def D(step):
        return sum(w * g(o * step) for o, w in zip(offsets, weights)) / step**n

    coarse, fine = D(h), D(h / 2)
    value = (16 * fine - coarse) / 15
    return MomentRecord(float(y), int(n), value, abs(fine - coarse) / 15, "mgf")


# -- zeta moments --------------------------------------------------------

def zeta_moment(y: float, k: int = 0, eps: float = 1e-12) -> float:
    """``sum_{n>=1} n^{-y} (ln n)^k`` via partial sums and a two-term Euler-Maclaurin tail."""
    if not y > 1:
        raise Divergent(f"sum n^-y (ln n)^k diverges for y={y} <= 1")
    if not 0 <= k <= 10:
        raise ValueError("k must be in 0..10")
    g = LogPower.monomial(y, k)
    d1 = g.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()
    d5 = d3.derivative().derivative()
    d6 = d5.derivative()
    ratios = _bernoulli_ratios()
    N = 16
    while True:
        first_omitted = abs(ratios[3] * complex(d5(N)))
        remainder = abs(ratios[3]) * d6.abs_tail_bound(N)
        if first_omitted < eps / 2 and remainder < eps / 2:
            break
        N *= 2
        if N > 2**40:
            raise ToleranceNotMet(f"zeta_moment: no cutoff reaches eps={eps}")
    n = np.arange(1, N, dtype=float)
    partial = math.fsum(n ** (-y) * np.log(n) ** k)
    tail = g.tail_integral(N) + 0.5 * complex(g(N)) - ratios[1] * complex(d1(N)) - ratios[2] * complex(d3(N))
    return float(partial + tail.real)


def moment_table(mu, y: float, max_n: int, tol: float = 1e-10) -> list[MomentRecord]:
    if not 0 <= max_n <= MAX_DERIVATIVE:
        raise ValueError(f"max-n must be in 0..{MAX_DERIVATIVE}")
    return [moment(mu, y, n, tol) for n in range(max_n + 1)]
