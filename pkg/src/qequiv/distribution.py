"""Distributions made of point masses plus piecewise-uniform segments.

``F(x) = P(X <= x)`` is the weak CDF and ``F°(x) = P(X < x)`` the strict one.
Both are evaluated exactly from a knot table built once per distribution.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from . import _knots
from .numeric import (
    NEG_INF,
    POS_INF,
    ExtendedReal,
    format_rational,
    is_finite,
    parse_rational,
    terminating,
    format_decimal,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class DistributionError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid distribution: " + "; ".join(self.violations))


@dataclass(frozen=True)
class Atom:
    location: Fraction
    mass: Fraction


@dataclass(frozen=True)
class Segment:
    """Uniform mass on ``[left, right)``."""

    left: Fraction
    right: Fraction
    mass: Fraction

    @property
    def density(self) -> Fraction:
        return self.mass / (self.right - self.left)


class EvaluatedCdf(NamedTuple):
    strict: Fraction
    weak: Fraction


@dataclass(frozen=True)
class Distribution:
    """Finite atoms plus disjoint uniform segments, total mass one.

    The raw constructor stores its arguments unchanged so that invalid inputs
    can be inspected with :func:`validate`.  Use :meth:`build` to get the
    canonical, validated form.
    """

    atoms: tuple[Atom, ...] = ()
    segments: tuple[Segment, ...] = ()

    @classmethod
    def build(cls, atoms: Iterable = (), segments: Iterable = ()) -> "Distribution":
        atoms = [a if isinstance(a, Atom) else Atom(Fraction(a[0]), Fraction(a[1])) for a in atoms]
        segments = [
            s if isinstance(s, Segment) else Segment(Fraction(s[0]), Fraction(s[1]), Fraction(s[2]))
            for s in segments
        ]
        d = canonicalize(cls(tuple(atoms), tuple(segments)))
        problems = validate(d)
        if problems:
            raise DistributionError(problems)
        return d

    @classmethod
    def point(cls, x) -> "Distribution":
        return cls.build(atoms=[(x, 1)])

    @classmethod
    def uniform(cls, left, right) -> "Distribution":
        return cls.build(segments=[(left, right, 1)])

    @cached_property
    def knots(self) -> tuple[list, list, list]:
        return _knots.build_knots(
            [a.location for a in self.atoms],
            [a.mass for a in self.atoms],
            [s.left for s in self.segments],
            [s.right for s in self.segments],
            [s.mass for s in self.segments],
        )


def canonicalize(d: Distribution) -> Distribution:
    """Merge equal-location atoms, drop zero masses, join touching segments of equal density."""
    masses: dict[Fraction, Fraction] = {}
    for a in d.atoms:
        masses[a.location] = masses.get(a.location, ZERO) + a.mass
    atoms = tuple(Atom(x, m) for x, m in sorted(masses.items()) if m != 0)
    segs = sorted((s for s in d.segments if s.mass != 0), key=lambda s: (s.left, s.right))
    merged: list[Segment] = []
    for s in segs:
        if merged:
            last = merged[-1]
            if last.right == s.left and last.density == s.density:
                merged[-1] = Segment(last.left, s.right, last.mass + s.mass)
                continue
        merged.append(s)
    return Distribution(atoms, tuple(merged))


def _component_problems(d: Distribution) -> list[str]:
    problems = []
    for a in d.atoms:
        if not (0 < a.mass <= 1):
            problems.append(f"atom at {format_rational(a.location)} has mass {format_rational(a.mass)} outside (0, 1]")
    for s in d.segments:
        if not s.left < s.right:
            problems.append(f"segment [{format_rational(s.left)}, {format_rational(s.right)}) is empty or reversed")
        if not s.mass > 0:
            problems.append(f"segment [{format_rational(s.left)}, {format_rational(s.right)}) has non-positive mass")
    return problems


def validate(d: Distribution) -> list[str]:
    """Return one human-readable message per broken invariant (empty when valid)."""
    problems = _component_problems(d)
    locs = [a.location for a in d.atoms]
    if any(b <= a for a, b in zip(locs, locs[1:])):
        problems.append("atom locations not strictly increasing")
    ordered = sorted(d.segments, key=lambda s: s.left)
    if list(ordered) != list(d.segments):
        problems.append("segments not sorted")
    if any(b.left < a.right for a, b in zip(ordered, ordered[1:])):
        problems.append("overlapping segments")
    for a, b in zip(ordered, ordered[1:]):
        if a.right == b.left and a.left < a.right and b.left < b.right and a.density == b.density:
            problems.append(f"adjacent segments at {format_rational(a.right)} not merged")
    total = sum((a.mass for a in d.atoms), ZERO) + sum((s.mass for s in d.segments), ZERO)
    if total != 1:
        problems.append(f"total mass {format_rational(total)} ≠ 1")
    return problems


def cdf(d: Distribution, x: ExtendedReal) -> EvaluatedCdf:
    """``(P(X < x), P(X <= x))``, exact."""
    if not is_finite(x):
        return EvaluatedCdf(ZERO, ZERO) if x < 0 else EvaluatedCdf(ONE, ONE)
    xs, strict, weak = d.knots
    s, w = _knots.cdf_at(xs, strict, weak, x)
    return EvaluatedCdf(s, w)


def mass_open(d: Distribution, a: ExtendedReal, b: ExtendedReal) -> Fraction:
    """``P(a < X < b)``; zero when ``a >= b``."""
    if not a < b:
        return ZERO
    return cdf(d, b).strict - cdf(d, a).weak


def reflect(d: Distribution) -> Distribution:
    """Law of ``-X``."""
    atoms = [Atom(-a.location, a.mass) for a in reversed(d.atoms)]
    segments = [Segment(-s.right, -s.left, s.mass) for s in reversed(d.segments)]
    return canonicalize(Distribution(tuple(atoms), tuple(segments)))


def support_bounds(d: Distribution) -> tuple[ExtendedReal, ExtendedReal]:
    """Smallest closed interval carrying all the mass, i.e. ``(rq(0), lq(1))``."""
    xs = [a.location for a in d.atoms] + [s.left for s in d.segments]
    ys = [a.location for a in d.atoms] + [s.right for s in d.segments]
    if not xs:
        return NEG_INF, POS_INF
    return min(xs), max(ys)


def from_empirical(values: Sequence) -> Distribution:
    """Uniform empirical law: each distinct value gets multiplicity / n."""
    values = [Fraction(v) for v in values]
    if not values:
        raise ValueError("empirical distribution needs at least one value")
    n = len(values)
    counts = Counter(values)
    return Distribution.build(atoms=[(x, Fraction(c, n)) for x, c in counts.items()])


# -- document format -------------------------------------------------------

def _num(q: Fraction) -> str:
    return format_decimal(q) if terminating(q) else format_rational(q)


def _parse_field(obj: dict, key: str, where: str) -> Fraction:
    if key not in obj:
        raise DistributionError([f"{where}: missing field {key!r}"])
    raw = obj[key]
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise DistributionError([f"{where}.{key}: numbers must be decimal strings, got {raw!r}"])
    try:
        return parse_rational(str(raw))
    except ValueError as exc:
        raise DistributionError([f"{where}.{key}: {exc}"]) from None


def to_document(d: Distribution) -> dict:
    return {
        "atoms": [{"x": _num(a.location), "mass": _num(a.mass)} for a in d.atoms],
        "segments": [
            {"left": _num(s.left), "right": _num(s.right), "mass": _num(s.mass)} for s in d.segments
        ],
    }


def from_document(doc: dict) -> Distribution:
    """Parse and validate a distribution document; raises DistributionError."""
    if not isinstance(doc, dict):
        raise DistributionError(["document must be an object with 'atoms' and 'segments'"])
    unknown = set(doc) - {"atoms", "segments"}
    if unknown:
        raise DistributionError([f"unknown keys {sorted(unknown)}"])
    atoms = [
        Atom(_parse_field(a, "x", f"atoms[{i}]"), _parse_field(a, "mass", f"atoms[{i}]"))
        for i, a in enumerate(doc.get("atoms", []))
    ]
    segments = [
        Segment(
            _parse_field(s, "left", f"segments[{i}]"),
            _parse_field(s, "right", f"segments[{i}]"),
            _parse_field(s, "mass", f"segments[{i}]"),
        )
        for i, s in enumerate(doc.get("segments", []))
    ]
    raw = Distribution(tuple(atoms), tuple(segments))
    problems = _component_problems(raw)
    if problems:
        raise DistributionError(problems)
    d = canonicalize(raw)
    problems = validate(d)
    if problems:
        raise DistributionError(problems)
    return d


def load(path) -> Distribution:
    with open(path, encoding="utf-8") as fh:
        return from_document(json.load(fh))


def dump(d: Distribution, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_document(d), fh, indent=2)
        fh.write("\n")
