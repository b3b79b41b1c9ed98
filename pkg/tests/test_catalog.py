import math

import numpy as np
import pytest

from pdstrip import catalog, oracles
from pdstrip.catalog import entry, reference_eval, zed_eval
from pdstrip.certify import classify_strip
from pdstrip.engine import fl_transform
from pdstrip.errors import OracleDomain, ParamOutOfRange, PoleEvaluation, UnknownEntry
from pdstrip.segments import LogLattice


def test_entry_examples():
    e = entry("bessel_norm", alpha=0)
    seg = e.regions[0].descriptor.segments[0]
    t = np.array([-0.5, 0.0, 0.3])
    assert np.allclose(seg.density(t), 1 / (math.pi * np.sqrt(1 - t**2)))
    z = entry("zeta")
    atoms = z.regions[0].descriptor.atoms[0]
    assert isinstance(atoms, LogLattice) and atoms.power == 0
    with pytest.raises(ParamOutOfRange):
        entry("bessel_norm", alpha=-0.6)
    with pytest.raises(UnknownEntry):
        entry("digamma")
    with pytest.raises(ParamOutOfRange):
        entry("sech_half_pi", n=2)
    with pytest.raises(ParamOutOfRange):
        entry("gamma", n=3)
    with pytest.raises(ParamOutOfRange):
        entry("zeta", {"s": 1})


def test_reference_eval_examples():
    assert reference_eval("gamma", {}, 0.5) == pytest.approx(1.77245385090552, abs=1e-13)
    assert reference_eval("zeta", {}, 2) == pytest.approx(1.64493406684823, abs=1e-13)
    assert reference_eval("bessel_norm", {"alpha": 0}, 0) == 1
    assert reference_eval("sech_half_pi", {}, 1) == pytest.approx(0.39853681533839, abs=1e-13)
    with pytest.raises(OracleDomain):
        reference_eval("zeta", {}, -1)
    with pytest.raises(PoleEvaluation):
        reference_eval("gamma", {}, -2)


def test_zed_eval_examples():
    assert zed_eval(2) == pytest.approx(-0.82246703342411, abs=1e-13)
    assert zed_eval(0.5) == pytest.approx(2.92070901761918, abs=1e-13)
    with pytest.raises(PoleEvaluation):
        zed_eval(1)


def _regions():
    for name in catalog.NAMES:
        e = entry(name)
        for i, r in enumerate(e.regions):
            yield pytest.param(e, r, id=f"{name}-{r.strip.label()}")


@pytest.mark.parametrize("e, region", list(_regions()))
def test_descriptor_interval_matches_strip(e, region):
    if region.descriptor is None:
        assert e.name == "zed" and region.expected == "indefinite"
        return
    assert region.descriptor.finiteness == (region.strip.lo, region.strip.hi)


@pytest.mark.parametrize("e, region", [p for p in _regions() if p.values[1].descriptor is not None])
def test_representation_fidelity(e, region):
    rng = np.random.default_rng(50)
    lo, hi = region.strip.finite_window()
    for _ in range(50):
        c = lo + (hi - lo) * (0.05 + 0.9 * rng.random())
        a = 6 * rng.random() - 3
        w = complex(a, c) if e.orientation == "horizontal" else complex(c, a)
        got = e.represent(region, w, tol=1e-12, rtol=1e-11).value
        ref = e.oracle(w)
        assert abs(got - ref) <= max(1e-8 * abs(ref), 1e-10)


@pytest.mark.parametrize("e, region", list(_regions()))
def test_verdict_fidelity(e, region):
    assert classify_strip(e.evaluator(), region.strip, e.mode, 200, 42).mode == region.expected


def test_region_lookup_and_evaluator():
    e = entry("rational11")
    assert e.region_for(0.3j).expected == "pd"
    assert e.region_for(2 + 3j).expected == "nd"
    with pytest.raises(LookupError):
        e.region_for(1j)
    v, err = e.evaluator()(0.5j)
    assert v == pytest.approx(1 / 0.75) and err == pytest.approx(1e-12 * abs(v))


def test_critical_strip_identity():
    mu = catalog.frac_exp_full_line()
    rng = np.random.default_rng(20)
    for _ in range(20):
        s = complex(0.02 + 0.96 * rng.random(), -20 + 40 * rng.random())
        v = -s * fl_transform(mu, 1j * s, 1e-12).value
        ref = oracles.zeta(s)
        assert abs(v - ref) <= 1e-6 * abs(ref)


def test_catalog_listing():
    lines = catalog.catalog_lines()
    assert len(lines) == len(catalog.NAMES)
    assert lines[0].startswith("rational11\t")
    assert "T(-inf,0) indefinite" in lines[-1]
