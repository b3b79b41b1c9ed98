"""Euler-Maclaurin tails for sums and sawtooth integrals of log-power terms.

A log-power term is ``g(u) = u^{-a} * sum_j c_j (ln u)^j``; the family is
closed under differentiation, which is all Euler-Maclaurin needs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

from .quadrature import upper_exp_moment

MAX_TERMS = 24


@lru_cache(maxsize=1)
def _bernoulli_ratios():
    # B_{2j} / (2j)! for j = 0..MAX_TERMS
    b = bernoulli(2 * MAX_TERMS)
    return [b[2 * j] / math.factorial(2 * j) for j in range(MAX_TERMS + 1)]


@dataclass(frozen=True)
class LogPower:
    a: complex
    coeffs: tuple

    @classmethod
    def monomial(cls, a, k: int, scale=1.0):
        coeffs = [0.0] * k + [scale]
        return cls(complex(a), tuple(complex(c) for c in coeffs))

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        L = np.log(u)
        poly = np.zeros_like(L, dtype=complex)
        for c in reversed(self.coeffs):
            poly = poly * L + c
        return np.exp(-self.a * L) * poly

    def derivative(self) -> "LogPower":
        c = list(self.coeffs)
        n = len(c)
        new = [(-self.a) * c[j] + ((j + 1) * c[j + 1] if j + 1 < n else 0) for j in range(n)]
        return LogPower(self.a + 1, tuple(new))

    def tail_integral(self, N: float):
        """``int_N^inf g(u) du`` (needs ``Re a > 1``)."""
        T = math.log(N)
        return sum(c * upper_exp_moment(j, self.a - 1, T) for j, c in enumerate(self.coeffs))

    def abs_tail_bound(self, N: float) -> float:
        """Upper bound on ``int_N^inf |g(u)| du`` for ``N >= 1``."""
        T = math.log(N)
        r = self.a.real - 1
        if r <= 0:
            return math.inf
        return float(sum(abs(c) * upper_exp_moment(j, r, T) for j, c in enumerate(self.coeffs)))


def em_sum_tail(g: LogPower, N: int, tol: float):
    """``sum_{n >= N} g(n)`` with a certified remainder bound.

    Returns ``(value, bound, terms_used)``.
    """
    ratios = _bernoulli_ratios()
    value = g.tail_integral(N) + 0.5 * complex(g(N))
    d = g.derivative()  # g^{(2j-1)} walks through odd orders
    best = None
    for j in range(1, MAX_TERMS + 1):
        value = value - ratios[j] * complex(d(N))
        d_even = d.derivative()
        bound = abs(ratios[j]) * d_even.abs_tail_bound(N)
        if best is None or bound < best[1]:
            best = (value, bound, j)
        if bound <= tol:
            return value, bound, j
        d = d_even.derivative()
    return best


def em_sawtooth_tail(g: LogPower, N: int, tol: float):
    """``int_N^inf {u} g(u) du`` with ``{u}`` the fractional part.

    Returns ``(value, bound, terms_used)``.
    """
    ratios = _bernoulli_ratios()
    value = 0.5 * g.tail_integral(N)
    d = g  # g^{(2j-2)}
    best = None
    for j in range(1, MAX_TERMS + 1):
        value = value - ratios[j] * complex(d(N))
        d_odd = d.derivative()
        bound = abs(ratios[j]) * d_odd.abs_tail_bound(N)
        if best is None or bound < best[1]:
            best = (value, bound, j)
        if bound <= tol:
            return value, bound, j
        d = d_odd.derivative()
    return best
