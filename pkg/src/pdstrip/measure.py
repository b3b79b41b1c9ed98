"""Exponentially finite measures: density segments plus atomic series."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import EmptyIntersection, MalformedDescriptor, OutOfFinitenessInterval, ParseError
from .segments import ATOM_KINDS, SEGMENT_KINDS, AtomSeries, DensitySegment
from .strips import parse_ext_real

INF = math.inf


def _intersect(intervals):
    lo, hi = -INF, INF
    for a, b in intervals:
        lo, hi = max(lo, a), min(hi, b)
    return lo, hi


@dataclass(frozen=True)
class MeasureDescriptor:
    """A real measure ``sum of segment densities + atom series``.

    Segments may overlap; the measure is their sum. ``nonneg`` is derived
    from the recorded signs unless given, in which case it is checked.
    """

    segments: tuple = ()
    atoms: tuple = ()
    nonneg: bool | None = None

    def __post_init__(self):
        segs = tuple(self.segments)
        atoms = self.atoms
        if isinstance(atoms, AtomSeries):
            atoms = (atoms,)
        atoms = tuple(atoms or ())
        if not segs and not atoms:
            raise MalformedDescriptor("descriptor has neither segments nor atoms")
        for s in segs:
            if not isinstance(s, DensitySegment):
                raise MalformedDescriptor(f"not a density segment: {s!r}")
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "atoms", atoms)
        signs_ok = all(s.sign >= 0 for s in segs) and all(a.sign >= 0 for a in atoms)
        if self.nonneg is None:
            object.__setattr__(self, "nonneg", signs_ok)
        elif self.nonneg and not signs_ok:
            raise MalformedDescriptor("nonneg flag set but a segment or atom series is negative")
        lo, hi = _intersect(p.finiteness() for p in (*segs, *atoms))
        if not lo < hi:
            raise MalformedDescriptor(f"empty finiteness interval ({lo}, {hi})")
        object.__setattr__(self, "finiteness", (lo, hi))

    def contains(self, y: float) -> bool:
        lo, hi = self.finiteness
        return lo < y < hi

    def check(self, y: float):
        if not self.contains(y):
            lo, hi = self.finiteness
            raise OutOfFinitenessInterval(f"y={y:g} outside finiteness interval ({lo}, {hi})")

    def density(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for s in self.segments:
            out += s.density(t)
        return out

    def scaled(self, c: float) -> "MeasureDescriptor":
        segs = tuple(replace(s, scale=c * s.scale) for s in self.segments)
        atoms = tuple(replace(a, scale=c * a.scale) for a in self.atoms)
        return MeasureDescriptor(segs, atoms)

    def to_json(self) -> dict:
        out = {"segments": [s.to_json() for s in self.segments]}
        if len(self.atoms) == 1:
            out["atoms"] = self.atoms[0].to_json()
        elif self.atoms:
            out["atoms"] = [a.to_json() for a in self.atoms]
        out["nonneg"] = bool(self.nonneg)
        return out


@dataclass(frozen=True)
class TiltedView:
    """The measure ``e^{-yt} dmu(t)``."""

    base: MeasureDescriptor
    y: float

    @property
    def finiteness(self):
        lo, hi = self.base.finiteness
        return lo - self.y, hi - self.y

    @property
    def nonneg(self):
        return self.base.nonneg

    def contains(self, u: float) -> bool:
        lo, hi = self.finiteness
        return lo < u < hi

    def check(self, u: float):
        self.base.check(u + self.y)


def finiteness_interval(mu) -> tuple[float, float]:
    return mu.finiteness


def tilt(mu, y: float) -> TiltedView:
    if isinstance(mu, TiltedView):
        mu.check(y)
        return TiltedView(mu.base, mu.y + y)
    mu.check(y)
    return TiltedView(mu, float(y))


def scale_add(c1: float, mu1: MeasureDescriptor, c2: float, mu2: MeasureDescriptor) -> MeasureDescriptor:
    """Descriptor of ``c1 mu1 + c2 mu2`` for ``c1, c2 >= 0``.

    Zero coefficients keep their operand (with zero weight) so the
    finiteness interval is always the intersection.
    """
    if c1 < 0 or c2 < 0:
        raise ValueError("scale_add needs non-negative coefficients")
    lo = max(mu1.finiteness[0], mu2.finiteness[0])
    hi = min(mu1.finiteness[1], mu2.finiteness[1])
    if not lo < hi:
        raise EmptyIntersection(f"finiteness intervals {mu1.finiteness} and {mu2.finiteness} are disjoint")
    a, b = mu1.scaled(c1), mu2.scaled(c2)
    return MeasureDescriptor(a.segments + b.segments, a.atoms + b.atoms)


def weighted_mass(mu, y: float, tol: float = 1e-10, rtol: float = 0.0):
    """``int e^{-yt} dmu(t)`` as a :class:`~pdstrip.engine.QuadResult`."""
    from .engine import fl_transform

    return fl_transform(mu, 1j * y, tol, rtol=rtol)


# ---------------------------------------------------------------------------
# file format

_SEGMENT_PARAMS = {
    "exp_poly": {"terms"},
    "sech_weight": {"c", "a"},
    "gumbel": set(),
    "gamma_tail": {"n", "sign"},
    "bessel_core": {"alpha"},
    "frac_exp": set(),
    "table": {"t", "values"},
}
_ATOM_PARAMS = {"finite_list": {"locations", "weights"}, "log_lattice": {"power"}}


def _reject_unknown(obj: dict, allowed: set, where: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise ParseError(f"{where}: unknown keys {sorted(extra)}")


def _segment_from_json(obj, where):
    _reject_unknown(obj, {"lo", "hi", "kind", "params"}, where)
    for key in ("lo", "hi", "kind"):
        if key not in obj:
            raise ParseError(f"{where}: missing {key!r}")
    kind = obj["kind"]
    if kind not in SEGMENT_KINDS:
        raise ParseError(f"{where}.kind: unknown segment kind {kind!r}")
    params = dict(obj.get("params") or {})
    _reject_unknown(params, _SEGMENT_PARAMS[kind] | {"scale"}, f"{where}.params")
    try:
        lo = parse_ext_real(obj["lo"])
        hi = parse_ext_real(obj["hi"])
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None
    kw = {"lo": lo, "hi": hi, "scale": float(params.pop("scale", 1.0))}
    if kind == "exp_poly":
        terms = []
        for i, term in enumerate(params.get("terms", [])):
            if isinstance(term, dict):
                _reject_unknown(term, {"c", "k", "a"}, f"{where}.params.terms[{i}]")
                terms.append((term.get("c", 1.0), term.get("k", 0), term.get("a", 0.0)))
            else:
                terms.append(tuple(term))
        kw["terms"] = tuple(terms)
    elif kind == "gamma_tail":
        kw["n"] = params.get("n", 0)
        kw["sgn"] = params.get("sign", 1)
    elif kind == "table":
        kw["t"] = tuple(params.get("t", ()))
        kw["values"] = tuple(params.get("values", ()))
    else:
        kw.update(params)
    try:
        return SEGMENT_KINDS[kind](**kw)
    except MalformedDescriptor as exc:
        raise MalformedDescriptor(f"{where}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise MalformedDescriptor(f"{where}: {exc}") from None


def _atoms_from_json(obj, where):
    _reject_unknown(obj, {"kind", "params"}, where)
    kind = obj.get("kind")
    if kind not in ATOM_KINDS:
        raise ParseError(f"{where}.kind: unknown atom kind {kind!r}")
    params = dict(obj.get("params") or {})
    _reject_unknown(params, _ATOM_PARAMS[kind] | {"scale"}, f"{where}.params")
    try:
        return ATOM_KINDS[kind](**params)
    except MalformedDescriptor as exc:
        raise MalformedDescriptor(f"{where}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise MalformedDescriptor(f"{where}: {exc}") from None


def descriptor_from_json(obj) -> MeasureDescriptor:
    _reject_unknown(obj, {"segments", "atoms", "nonneg"}, "$")
    segs = obj.get("segments", [])
    if not isinstance(segs, list):
        raise ParseError("$.segments: expected an array")
    segments = tuple(_segment_from_json(s, f"$.segments[{i}]") for i, s in enumerate(segs))
    raw_atoms = obj.get("atoms")
    if raw_atoms is None:
        atoms = ()
    elif isinstance(raw_atoms, list):
        atoms = tuple(_atoms_from_json(a, f"$.atoms[{i}]") for i, a in enumerate(raw_atoms))
    else:
        atoms = (_atoms_from_json(raw_atoms, "$.atoms"),)
    nonneg = obj.get("nonneg")
    if nonneg is not None and not isinstance(nonneg, bool):
        raise ParseError("$.nonneg: expected a boolean")
    try:
        return MeasureDescriptor(segments, atoms, nonneg)
    except MalformedDescriptor as exc:
        raise MalformedDescriptor(f"$: {exc}") from None


def parse_measure_file(path) -> MeasureDescriptor:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    return descriptor_from_json(obj)


def dump_measure(mu: MeasureDescriptor, path=None) -> str:
    text = json.dumps(mu.to_json(), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
