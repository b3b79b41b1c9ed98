"""Golden values for the closed-form oracles, frozen from 30-digit mpmath runs."""
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdstrip import oracles
from pdstrip.errors import OracleDomain, PoleEvaluation

GAMMA_GOLDEN = [
    (0.5, 1.772453850905516),
    (-0.5, -3.5449077018110321),
    (3.7 + 2.1j, -1.8598252959665196 + 1.1623401526968618j),
    (0.2 - 1.3j, 0.041525004924414724 + 0.29940289493100482j),
    (-2.5 + 0.5j, -0.33387520352243234 - 0.20645730796360841j),
]

ZETA_GOLDEN = [
    (2, 1.6449340668482264),
    (3, 1.2020569031595943),
    (0.5, -1.4603545088095868),
    (1.5 + 3j, 0.71983412483453085 - 0.1184490831887597j),
]


@pytest.mark.parametrize("s, expected", GAMMA_GOLDEN)
def test_gamma_golden(s, expected):
    assert abs(oracles.gamma(s) - expected) <= 1e-13 * abs(expected)


@pytest.mark.parametrize("s, expected", ZETA_GOLDEN)
def test_zeta_golden(s, expected):
    assert abs(oracles.zeta(s) - expected) <= 1e-13 * abs(expected)


def test_zeta_near_first_nontrivial_zero():
    v = oracles.zeta(0.5 + 14.134725j)
    assert abs(v - (1.7674298413849039e-8 - 1.1102028930923117e-7j)) < 1e-13


def test_continued_zeta_left_half_plane():
    v = oracles.zeta_continued(-1.5 + 2j)
    assert abs(v - (0.12424726557777475 - 0.015707749528273203j)) < 1e-13


def test_gamma_half_squared_is_pi():
    assert oracles.gamma(0.5) ** 2 == pytest.approx(math.pi, rel=1e-14)


def test_bessel_golden():
    assert abs(oracles.bessel_normalized(0) - 1) == 0
    assert abs(oracles.bessel_normalized(2.5) + 0.048383776468197996) < 1e-14
    assert abs(oracles.bessel_normalized(3 + 4j) - (-8.8121437936979055 - 4.5984378997430351j)) < 1e-12
    assert oracles.bessel_normalized(2.0, 1.5) == pytest.approx(0.65309666246998747, rel=1e-13)


def test_elementary_oracles():
    assert oracles.sech_half_pi(1) == pytest.approx(0.39853681533839, abs=1e-14)
    assert abs(oracles.sech_half_pi(0.3 + 0.4j) - (1.0078481740499391 - 0.32160164807641744j)) < 1e-14
    assert oracles.rational11(2) == pytest.approx(0.2)


def test_u_and_zed():
    assert oracles.u_func(2) == pytest.approx(0.17753296657588678, rel=1e-13)
    assert oracles.u_func(0.5) == pytest.approx(0.92070901761917363, rel=1e-13)
    assert oracles.u_func(1) == pytest.approx(1 - oracles.EULER_GAMMA, rel=1e-12)
    assert oracles.zed(2) == pytest.approx(-0.82246703342411, abs=1e-13)
    assert oracles.zed(0.5) == pytest.approx(2.92070901761918, abs=1e-13)


def test_poles_and_domains():
    for s in (0, -1, -3):
        with pytest.raises(PoleEvaluation):
            oracles.gamma(s)
    with pytest.raises(PoleEvaluation):
        oracles.zeta(1)
    with pytest.raises(OracleDomain):
        oracles.zeta(-0.5)
    with pytest.raises(PoleEvaluation):
        oracles.zed(1)


@given(st.floats(0.5, 5), st.floats(-5, 5))
def test_gamma_recurrence(x, y):
    s = complex(x, y)
    lhs, rhs = oracles.gamma(s + 1), s * oracles.gamma(s)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_gamma_recurrence_seeded_points():
    rng = np.random.default_rng(5)
    for _ in range(100):
        s = complex(0.5 + 4.5 * rng.random(), -5 + 10 * rng.random())
        assert abs(oracles.gamma(s + 1) - s * oracles.gamma(s)) <= 1e-12 * abs(s * oracles.gamma(s))


@given(st.floats(0.05, 10), st.floats(-25, 25))
def test_zeta_matches_mpmath(x, y):
    s = complex(x, y)
    if abs(s - 1) < 1e-3:
        return
    ref = complex(mp.zeta(mp.mpc(x, y)))
    assert abs(oracles.zeta(s) - ref) <= 1e-12 * max(abs(ref), 1e-3)


@given(st.floats(-10, 10), st.floats(-10, 10))
def test_bessel_matches_mpmath(x, y):
    z = complex(x, y)
    ref = complex(mp.besselj(0, mp.mpc(x, y)))
    assert abs(oracles.bessel_normalized(z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_bessel_oracle_refuses_far_arguments():
    with pytest.raises(OracleDomain):
        oracles.bessel_normalized(40.0)
