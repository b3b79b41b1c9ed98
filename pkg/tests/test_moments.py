import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdstrip import catalog
from pdstrip.errors import Divergent, OutOfFinitenessInterval
from pdstrip.measure import weighted_mass
from pdstrip.moments import (
    central_stencil,
    cf_eval,
    mgf_derivative,
    mgf_eval,
    moment,
    moment_from_derivative,
    moment_table,
    zeta_moment,
)

CENTRAL = catalog.entry("rational11").regions[1].descriptor
GUMBEL = catalog.entry("gamma").regions[0].descriptor
ZETA = catalog.entry("zeta").regions[0].descriptor
ZETA2 = 1.6449340668482264
ZETA_PRIME_2 = 0.93754825431584375  # -zeta'(2)


def test_moment_examples():
    assert moment(CENTRAL, 0.0, 2).value == pytest.approx(2.0, abs=1e-9)
    assert abs(moment(CENTRAL, 0.0, 1).value) < 1e-12
    r = moment(ZETA, 2.0, 1, 1e-12)
    assert abs(r.value - ZETA_PRIME_2) <= r.abs_err + 1e-15
    with pytest.raises(OutOfFinitenessInterval):
        moment(ZETA, 1.0, 0)


def test_zeroth_moment_is_weighted_mass():
    for y in (0.3, 1.0, 2.5):
        a = moment(GUMBEL, y, 0)
        b = weighted_mass(GUMBEL, y)
        assert abs(a.value - b.value.real) <= a.abs_err + b.abs_err


def test_cf_examples():
    assert cf_eval(CENTRAL, 0.0, 1.0) == pytest.approx(0.5, abs=1e-10)
    assert cf_eval(ZETA, 2.0, 0.0) == pytest.approx(ZETA2, abs=1e-10)
    assert cf_eval(GUMBEL, 1.5, 0.0).real == pytest.approx(moment(GUMBEL, 1.5, 0).value, abs=1e-9)


def test_mgf_examples():
    assert mgf_eval(GUMBEL, 2.0, 1.0) == pytest.approx(1.0, abs=1e-10)
    assert mgf_eval(ZETA, 3.0, 1.0) == pytest.approx(ZETA2, abs=1e-10)
    assert mgf_eval(GUMBEL, 2.0, 0.0) == pytest.approx(moment(GUMBEL, 2.0, 0).value, abs=1e-9)
    with pytest.raises(OutOfFinitenessInterval):
        mgf_eval(GUMBEL, 1.0, 1.5)


@given(st.floats(1.2, 4), st.floats(-1, 0.15))
def test_mgf_is_weighted_mass_shift(y, u):
    r = weighted_mass(ZETA, y - u, 1e-11)
    assert abs(mgf_eval(ZETA, y, u, 1e-11) - r.value.real) <= 2e-11


def test_zeta_moment_examples():
    assert zeta_moment(2, 0) == pytest.approx(ZETA2, abs=1e-12)
    assert zeta_moment(2, 1) == pytest.approx(ZETA_PRIME_2, abs=1e-12)
    with pytest.raises(Divergent):
        zeta_moment(1, 0)


@pytest.mark.parametrize("y, k", [(1.1, 0), (1.5, 3), (3.0, 10), (2.0, 2)])
def test_zeta_moment_matches_lattice_quadrature(y, k):
    r = moment(ZETA, y, k, 1e-10, rtol=1e-12)
    assert zeta_moment(y, k, 1e-10) == pytest.approx(r.value, abs=1e-10 + r.abs_err, rel=1e-12)


def test_central_stencils():
    offs, w = central_stencil(1)
    assert offs == (-2, -1, 0, 1, 2)
    assert np.allclose(w, [1 / 12, -2 / 3, 0, 2 / 3, -1 / 12])
    for n in range(1, 5):
        offs, w = central_stencil(n)
        # exact on polynomials up to degree n + 3
        for deg in range(n + 4):
            val = sum(wi * o**deg for o, wi in zip(offs, w))
            assert val == pytest.approx(math.factorial(n) if deg == n else 0.0, abs=1e-9)


REGIONS = [("rational11", 1, 0.3), ("gamma", 0, 1.5), ("gamma", 0, 0.4), ("zeta", 0, 2.0),
           ("u_func", 0, 0.5), ("bessel_norm", 0, 0.7), ("sech_half_pi", 2, -0.2), ("zed", 0, 0.5)]


@pytest.mark.parametrize("name, idx, y", REGIONS)
def test_identity_chain(name, idx, y):
    mu = catalog.entry(name).regions[idx].descriptor
    for n in range(5):
        a = moment(mu, y, n, 1e-11, rtol=1e-12)
        b = moment_from_derivative(mu, y, n, 1e-11, rtol=1e-12)
        c = mgf_derivative(mu, y, n)
        assert abs(a.value - b.value) <= a.abs_err + b.abs_err
        assert abs(a.value - c.value) <= 1e-5 * (1 + abs(a.value))


@pytest.mark.parametrize("name, idx, y", REGIONS[:-1])
def test_cauchy_schwarz_on_moments(name, idx, y):
    mu = catalog.entry(name).regions[idx].descriptor
    m0, m1, m2 = (moment(mu, y, n, 1e-11, rtol=1e-12) for n in range(3))
    slack = m0.abs_err * abs(m2.value) + m2.abs_err * abs(m0.value) + 2 * abs(m1.value) * m1.abs_err
    assert m1.value**2 <= m0.value * m2.value + slack


def test_moment_table_bounds():
    rows = moment_table(CENTRAL, 0.0, 4)
    assert [r.n for r in rows] == [0, 1, 2, 3, 4]
    assert rows[4].value == pytest.approx(24.0, abs=1e-8)
    with pytest.raises(ValueError):
        moment_table(CENTRAL, 0.0, 21)
