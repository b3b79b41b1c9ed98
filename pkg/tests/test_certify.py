import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdstrip import catalog, oracles
from pdstrip.certify import (
    CODIFFERENCE,
    COSUM,
    PointSet,
    classify_strip,
    fl_evaluator,
    gram_codifference,
    gram_cosum,
    omega_points,
    oracle_evaluator,
    psd_verdict,
    rotate_to_cosum,
)
from pdstrip.errors import EvaluatorFailure, NonHermitianBeyondTolerance, OracleDomain, PointOutsideStrip
from pdstrip.strips import Strip

INF = math.inf
S11 = Strip.horizontal(-1, 1)
RATIONAL = oracle_evaluator(oracles.rational11)
GAMMA = oracle_evaluator(oracles.gamma)
ZETA = oracle_evaluator(oracles.zeta)
ZED = oracle_evaluator(oracles.zed)


def test_codifference_examples():
    with pytest.raises(PointOutsideStrip) as info:
        gram_codifference(RATIONAL, PointSet([0.5j], CODIFFERENCE, S11))
    assert "points 0 and 0" in str(info.value)
    M, err = gram_codifference(RATIONAL, PointSet([0.3j], CODIFFERENCE, S11))
    assert M[0, 0] == pytest.approx(1.5625)
    M, err = gram_codifference(RATIONAL, PointSet([0.2j, 1 + 0.2j], CODIFFERENCE, S11))
    assert M[0, 0] == pytest.approx(1 / 0.84)
    assert M[1, 0] == pytest.approx(oracles.rational11(1 + 0.4j))
    assert M[0, 1] == pytest.approx(oracles.rational11(-1 + 0.4j))
    rep = psd_verdict(M, err)
    assert rep.verdict == "psd"
    assert rep.min_eig == pytest.approx(np.linalg.eigvalsh(0.5 * (M + M.conj().T))[0])


def test_cosum_examples():
    T = Strip.vertical(0, INF)
    M, _ = gram_cosum(GAMMA, PointSet([1, 2], COSUM, T))
    assert np.allclose(M, [[1, 2], [2, 6]], rtol=1e-13)
    assert psd_verdict(M).verdict == "psd"
    M, _ = gram_cosum(ZETA, PointSet([1.5], COSUM, Strip.vertical(1, INF)))
    assert M[0, 0].real == pytest.approx(1.2020569031595943, rel=1e-13)
    M, _ = gram_cosum(ZED, PointSet([2], COSUM, Strip.vertical(1, INF)))
    rep = psd_verdict(M)
    assert M[0, 0].real == pytest.approx(-1.0823232337111382 / 4, rel=1e-12)
    assert rep.verdict == "not_psd"


def test_mode_mismatch_is_rejected():
    with pytest.raises(ValueError):
        gram_cosum(GAMMA, PointSet([1], CODIFFERENCE, Strip.vertical(0, INF)))
    with pytest.raises(ValueError):
        PointSet([1], "sum", S11)


def test_psd_verdict_examples():
    r = psd_verdict([[1, 0.5], [0.5, 1]])
    assert r.verdict == "psd" and r.min_eig == pytest.approx(0.5)
    r = psd_verdict([[1, 2], [2, 1]])
    assert r.verdict == "not_psd" and r.min_eig == pytest.approx(-1)
    xi = r.witness / r.witness[0]
    assert np.allclose(xi, [1, -1])
    assert np.vdot(r.witness, np.array([[1, 2], [2, 1]]) @ r.witness).real < -r.threshold
    assert psd_verdict([[0]]).verdict == "psd"


def test_psd_threshold_absorbs_entry_error():
    M = np.array([[1.0, 1.0], [1.0, 1.0 - 1e-7]])
    assert psd_verdict(M, 0.0).verdict == "not_psd"
    assert psd_verdict(M, 1e-7).verdict == "psd"


def test_non_hermitian_detection():
    with pytest.raises(NonHermitianBeyondTolerance):
        psd_verdict([[1, 0.5], [0.1, 1]], 1e-3)
    assert psd_verdict([[1, 0.5], [0.5 + 1e-4, 1]], 1e-3).verdict == "psd"


def test_classify_examples():
    assert classify_strip(RATIONAL, S11, CODIFFERENCE, 200, 42).mode == "pd"
    assert classify_strip(RATIONAL, Strip.horizontal(1, INF), CODIFFERENCE, 200, 42).mode == "nd"
    zed_continued = oracle_evaluator(lambda s: oracles.zed(s, continuation=True))
    v = classify_strip(zed_continued, Strip.vertical(-INF, 0), COSUM, 200, 42)
    assert v.mode == "indefinite"
    assert v.witness is not None and v.counter_witness is not None
    bessel = oracle_evaluator(oracles.bessel_normalized)
    assert classify_strip(bessel, Strip.horizontal(-INF, INF), CODIFFERENCE, 200, 42).mode == "pd"


def test_zero_function_is_inconclusive():
    assert classify_strip(lambda z: (0j, 0.0), S11, CODIFFERENCE, 20, 1).mode == "inconclusive"


def test_classify_requires_matching_orientation():
    with pytest.raises(ValueError):
        classify_strip(RATIONAL, S11, COSUM, 10, 1)
    with pytest.raises(ValueError):
        classify_strip(RATIONAL, S11, CODIFFERENCE, 0, 1)


def test_evaluator_failure_carries_points():
    def bad(z):
        raise OracleDomain("nope")

    with pytest.raises(EvaluatorFailure) as info:
        classify_strip(bad, S11, CODIFFERENCE, 5, 3)
    assert len(info.value.points) >= 1


def test_determinism():
    a = classify_strip(RATIONAL, Strip.horizontal(1, 3), CODIFFERENCE, 50, 9)
    b = classify_strip(RATIONAL, Strip.horizontal(1, 3), CODIFFERENCE, 50, 9)
    assert a == b
    assert a.to_json() == b.to_json()


def test_verdict_json_record():
    v = classify_strip(RATIONAL, S11, CODIFFERENCE, 30, 42)
    text = v.to_json()
    assert "\n" not in text
    rec = json.loads(text)
    assert set(rec) >= {"strip", "mode", "verdict", "trials", "seed", "witness"}
    assert rec["verdict"] == "pd" and rec["strip"] == "S(-1,1)" and rec["seed"] == 42


@pytest.mark.parametrize("strip", [Strip.horizontal(-1, 1), Strip.horizontal(1, INF), Strip.vertical(-INF, 0), Strip.vertical(0, 1)])
def test_omega_points_keep_combinations_inside(strip):
    for trial in range(50):
        pts = omega_points(strip, 6, trial, 42)
        mode = CODIFFERENCE if strip.orientation == "horizontal" else COSUM
        ps = PointSet(pts, mode, strip)
        for k in range(6):
            for l in range(6):
                assert strip.contains(ps.combine(k, l))


def test_rotation_identities():
    rot2 = rotate_to_cosum(rotate_to_cosum(RATIONAL))
    for z in (0.3 + 0.2j, -1 + 0.1j):
        assert rot2(z)[0] == RATIONAL(-z)[0]
    # Gamma(-iz) on S(0,inf) pd <=> Gamma on T(0,inf) co-pd
    gamma_h = lambda z: GAMMA(-1j * z)
    assert classify_strip(gamma_h, Strip.horizontal(0, INF), CODIFFERENCE, 100, 42).mode == "pd"
    assert classify_strip(rotate_to_cosum(gamma_h), Strip.vertical(0, INF), COSUM, 100, 42).mode == "co_pd"
    sech = oracle_evaluator(oracles.sech_half_pi)
    assert classify_strip(sech, S11, CODIFFERENCE, 100, 42).mode == "pd"
    assert classify_strip(rotate_to_cosum(sech), Strip.vertical(-1, 1), COSUM, 100, 42).mode == "co_pd"


def test_measure_route_reproduces_verdict():
    e = catalog.entry("zeta")
    ev = fl_evaluator(e.regions[0].descriptor, "vertical")
    assert classify_strip(ev, e.regions[0].strip, COSUM, 100, 42).mode == "co_pd"


PD_EVALS = [RATIONAL, oracle_evaluator(oracles.sech_half_pi), oracle_evaluator(oracles.bessel_normalized)]


@given(st.integers(0, 10_000), st.integers(2, 6), st.floats(0, 5), st.floats(0, 5))
def test_schur_and_cone_closure(trial, size, c1, c2):
    ps = PointSet(omega_points(S11, size, trial, 7), CODIFFERENCE, S11)
    (A, ea), (B, eb) = (gram_codifference(ev, ps) for ev in PD_EVALS[:2])
    err = np.abs(A).max() * eb + np.abs(B).max() * ea
    assert psd_verdict(A * B, err).verdict == "psd"
    assert psd_verdict(c1 * A + c2 * B, c1 * ea + c2 * eb).verdict == "psd"


@given(st.floats(-4, 4), st.floats(-0.85, 0.85), st.floats(0, 1))
def test_modulus_bound_and_diagonal(x, y, frac):
    beta = frac * (1 - abs(y)) * 0.95
    for ev in PD_EVALS:
        fv, _ = ev(complex(x, y))
        fm, _ = ev(1j * (y - beta))
        fp, _ = ev(1j * (y + beta))
        assert abs(fm.imag) <= 1e-12 * abs(fm) and fm.real > 0
        assert abs(fv) ** 2 <= (fm * fp).real * (1 + 1e-11)
