"""Gram-matrix certification of (co-)positive definiteness on strips."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluatorFailure, NonHermitianBeyondTolerance, PdStripError, PointOutsideStrip
from .strips import HORIZONTAL, VERTICAL, Strip

CODIFFERENCE = "codifference"
COSUM = "cosum"
MAX_SIZE = 6

_MODE_ORIENTATION = {CODIFFERENCE: HORIZONTAL, COSUM: VERTICAL}


@dataclass(frozen=True)
class PointSet:
    points: tuple
    mode: str
    strip: Strip

    def __post_init__(self):
        if self.mode not in _MODE_ORIENTATION:
            raise ValueError(f"mode must be {CODIFFERENCE!r} or {COSUM!r}, got {self.mode!r}")
        object.__setattr__(self, "points", tuple(complex(p) for p in self.points))

    def combine(self, k: int, l: int) -> complex:
        zk, zl = self.points[k], self.points[l].conjugate()
        return zk - zl if self.mode == CODIFFERENCE else zk + zl


@dataclass
class GramReport:
    matrix: np.ndarray
    min_eig: float
    trace: float
    verdict: str
    witness: np.ndarray | None
    entry_err: float
    threshold: float = 0.0


@dataclass
class StripVerdict:
    strip: Strip
    mode: str
    trials: int
    seed: int
    witness: dict | None = None
    counter_witness: dict | None = None

    def to_json(self) -> str:
        rec = {
            "strip": self.strip.label(),
            "mode": _MODE_FOR_ORIENTATION[self.strip.orientation],
            "verdict": self.mode,
            "trials": self.trials,
            "seed": self.seed,
            "witness": self.witness,
        }
        if self.counter_witness is not None:
            rec["counter_witness"] = self.counter_witness
        return json.dumps(rec, separators=(",", ":"))


_MODE_FOR_ORIENTATION = {v: k for k, v in _MODE_ORIENTATION.items()}


def _call(ev, w):
    out = ev(w)
    if isinstance(out, tuple):
        v, e = out
    else:
        v, e = out, 0.0
    return complex(v), float(e)


def _gram(ev, pts: PointSet) -> tuple[np.ndarray, float]:
    n = len(pts.points)
    args = {}
    for k in range(n):
        for l in range(n):
            w = pts.combine(k, l)
            if not pts.strip.contains(w):
                raise PointOutsideStrip(
                    f"{pts.mode} of points {k} and {l} is {w}, outside {pts.strip.label()}"
                )
            args[k, l] = w
    M = np.empty((n, n), dtype=complex)
    err = 0.0
    for (k, l), w in args.items():
        v, e = _call(ev, w)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise EvaluatorFailure(f"non-finite value at {w}", pts.points)
        M[k, l] = v
        err = max(err, e)
    return M, err


def gram_codifference(ev, pts: PointSet) -> tuple[np.ndarray, float]:
    """Matrix ``[f(z_k - conj z_l)]`` and the largest entry error."""
    if pts.mode != CODIFFERENCE:
        raise ValueError("point set is not in codifference mode")
    return _gram(ev, pts)


def gram_cosum(ev, pts: PointSet) -> tuple[np.ndarray, float]:
    """Matrix ``[f(z_k + conj z_l)]`` and the largest entry error."""
    if pts.mode != COSUM:
        raise ValueError("point set is not in cosum mode")
    return _gram(ev, pts)


def psd_verdict(M, entry_err: float = 0.0, tol: float = 1e-10) -> GramReport:
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    n = M.shape[0]
    scale = float(np.max(np.abs(M))) if M.size else 0.0
    skew = float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0
    if skew > 2 * entry_err + 1e-12 * max(scale, 1.0):
        raise NonHermitianBeyondTolerance(
            f"Gram matrix asymmetry {skew:.3g} exceeds 2*entry_err = {2 * entry_err:.3g}"
        )
    H = 0.5 * (M + M.conj().T)
    vals, vecs = np.linalg.eigh(H)
    trace = float(np.real(np.trace(H)))
    threshold = tol * max(1.0, abs(trace)) + n * entry_err
    lam = float(vals[0])
    if lam >= -threshold:
        return GramReport(H, lam, trace, "psd", None, entry_err, threshold)
    return GramReport(H, lam, trace, "not_psd", vecs[:, 0], entry_err, threshold)


# -- point generation ----------------------------------------------------

def _radical_inverse(i: int, base: int) -> float:
    f, r = 1.0, 0.0
    while i > 0:
        f /= base
        r += f * (i % base)
        i //= base
    return r


def omega_points(strip: Strip, size: int, trial: int, seed: int, spread: float = 2.0) -> list[complex]:
    """Points of an Omega set whose codifferences/cosums fall inside ``strip``.

    The coordinate across the strip is drawn from the half-height sub-strip
    (shrunk slightly so the combinations stay in the open strip); the
    coordinate along the strip ranges over ``[-spread, spread]``.
    """
    rng = np.random.default_rng((seed, trial))
    wlo, whi = strip.finite_window()
    margin = 0.02 * (whi - wlo)
    lo, hi = (wlo + margin) / 2, (whi - margin) / 2
    pts = []
    for j in range(size):
        idx = trial * MAX_SIZE + j + 1
        u = (_radical_inverse(idx, 2) + 0.1 * rng.uniform(-1, 1)) % 1.0
        v = (_radical_inverse(idx, 3) + 0.1 * rng.uniform(-1, 1)) % 1.0
        along = spread * (2 * u - 1)
        across = lo + (hi - lo) * v
        if strip.orientation == HORIZONTAL:
            pts.append(complex(along, across))
        else:
            pts.append(complex(across, along))
    return pts


def _witness(pts, report: GramReport) -> dict:
    xi = report.witness
    return {
        "points": [[p.real, p.imag] for p in pts],
        "xi": [[complex(c).real, complex(c).imag] for c in xi],
        "min_eig": report.min_eig,
    }


def classify_strip(ev, strip: Strip, mode: str, trials: int = 200, seed: int = 42, tol: float = 1e-10) -> StripVerdict:
    """Classify ``ev`` on ``strip`` from seeded random Gram matrices."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if _MODE_ORIENTATION.get(mode) != strip.orientation:
        raise ValueError(f"{mode} mode needs a {_MODE_ORIENTATION.get(mode, '?')} strip, got {strip.label()}")
    against_f = against_neg = None
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial, 0))
        size = int(rng.integers(1, MAX_SIZE + 1))
        pts = PointSet(omega_points(strip, size, trial, seed), mode, strip)
        try:
            M, err = _gram(ev, pts)
        except PointOutsideStrip:
            raise
        except PdStripError as exc:
            if isinstance(exc, EvaluatorFailure):
                raise
            raise EvaluatorFailure(f"evaluator failed: {exc}", pts.points) from exc
        if against_f is None:
            rep = psd_verdict(M, err, tol)
            if rep.verdict == "not_psd":
                against_f = _witness(pts.points, rep)
        if against_neg is None:
            rep = psd_verdict(-M, err, tol)
            if rep.verdict == "not_psd":
                against_neg = _witness(pts.points, rep)
        if against_f is not None and against_neg is not None:
            break
    prefix = "" if mode == CODIFFERENCE else "co_"
    if against_f is not None and against_neg is not None:
        return StripVerdict(strip, "indefinite", trials, seed, against_f, against_neg)
    if against_neg is not None:
        return StripVerdict(strip, prefix + "pd", trials, seed, against_neg)
    if against_f is not None:
        return StripVerdict(strip, prefix + "nd", trials, seed, against_f)
    return StripVerdict(strip, "inconclusive", trials, seed)


def rotate_to_cosum(ev):
    """``w -> ev(i w)``: turns a codifference problem on S into a cosum one on -iS."""

    def rotated(w):
        return ev(1j * complex(w))

    return rotated


def oracle_evaluator(f, rel_err: float = 1e-12):
    def ev(w):
        v = complex(f(w))
        return v, rel_err * abs(v)

    return ev


def fl_evaluator(descriptor, orientation: str = HORIZONTAL, tol: float = 1e-10):
    """Evaluator backed by the transform engine, reporting its error bound."""
    from .engine import fl_transform

    def ev(w):
        z = complex(w) if orientation == HORIZONTAL else 1j * complex(w)
        r = fl_transform(descriptor, z, tol)
        return r.value, r.abs_err

    return ev
