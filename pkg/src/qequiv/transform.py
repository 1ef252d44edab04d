"""Monotone piecewise-affine maps and exact pushforward of distributions.

A map is described by sorted breakpoints ``b_1 < ... < b_k``, ``k + 1`` affine
pieces (piece ``i`` acts on the open interval between ``b_i`` and
``b_{i+1}``) and an explicit value at every breakpoint.  The breakpoint values
are what decide one-sided continuity.
"""
from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .distribution import Atom, Distribution, Segment, canonicalize
from .numeric import NEG_INF, POS_INF, ExtendedReal, format_rational, parse_rational, terminating, format_decimal


class Direction(str, Enum):
    NONDECREASING = "nondecreasing"
    NONINCREASING = "nonincreasing"


class MapError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid map: " + "; ".join(self.violations))


class DirectionError(ValueError):
    """Operation needs a nondecreasing map."""


@dataclass(frozen=True)
class Affine:
    slope: Fraction
    intercept: Fraction

    def __call__(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept

    def __neg__(self) -> "Affine":
        return Affine(-self.slope, -self.intercept)


@dataclass(frozen=True)
class PiecewiseAffineMap:
    direction: Direction
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Affine, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        problems = check_map(self)
        if problems:
            raise MapError(problems)

    @classmethod
    def build(cls, direction, breakpoints=(), pieces=((1, 0),), values=()) -> "PiecewiseAffineMap":
        return cls(
            Direction(direction),
            tuple(Fraction(b) for b in breakpoints),
            tuple(p if isinstance(p, Affine) else Affine(Fraction(p[0]), Fraction(p[1])) for p in pieces),
            tuple(Fraction(v) for v in values),
        )

    @classmethod
    def affine(cls, slope=1, intercept=0) -> "PiecewiseAffineMap":
        direction = Direction.NONINCREASING if Fraction(slope) < 0 else Direction.NONDECREASING
        return cls.build(direction, pieces=[(slope, intercept)])

    @classmethod
    def identity(cls) -> "PiecewiseAffineMap":
        return cls.affine(1, 0)

    @classmethod
    def constant(cls, c) -> "PiecewiseAffineMap":
        return cls.affine(0, c)

    def limits(self, i: int) -> tuple[Fraction, Fraction]:
        """(left limit, right limit) at breakpoint ``i``."""
        b = self.breakpoints[i]
        return self.pieces[i](b), self.pieces[i + 1](b)

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)


def check_map(phi: PiecewiseAffineMap) -> list[str]:
    problems = []
    k = len(phi.breakpoints)
    if len(phi.pieces) != k + 1:
        problems.append(f"{k} breakpoints need {k + 1} pieces, got {len(phi.pieces)}")
    if len(phi.values) != k:
        problems.append(f"{k} breakpoints need {k} values, got {len(phi.values)}")
    if any(b <= a for a, b in zip(phi.breakpoints, phi.breakpoints[1:])):
        problems.append("breakpoints not strictly increasing")
    if problems:
        return problems
    up = phi.direction is Direction.NONDECREASING
    for i, piece in enumerate(phi.pieces):
        if (piece.slope < 0) if up else (piece.slope > 0):
            problems.append(f"piece {i} has slope {format_rational(piece.slope)} against direction {phi.direction.value}")
    for i, (b, v) in enumerate(zip(phi.breakpoints, phi.values)):
        left, right = phi.limits(i)
        ok = left <= v <= right if up else left >= v >= right
        if not ok:
            problems.append(
                f"at breakpoint {format_rational(b)}: value {format_rational(v)} not between "
                f"limits {format_rational(left)} and {format_rational(right)}"
            )
    return problems


def evaluate(phi: PiecewiseAffineMap, x) -> Fraction:
    x = Fraction(x)
    i = bisect_left(phi.breakpoints, x)
    if i < len(phi.breakpoints) and phi.breakpoints[i] == x:
        return phi.values[i]
    return phi.pieces[i](x)


@dataclass(frozen=True)
class ContinuityReport:
    left_continuous: bool
    right_continuous: bool
    left_failures: tuple[Fraction, ...] = ()
    right_failures: tuple[Fraction, ...] = ()

    @property
    def witnesses(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self.left_failures) | set(self.right_failures)))


def continuity(phi: PiecewiseAffineMap) -> ContinuityReport:
    left_bad, right_bad = [], []
    for i, (b, v) in enumerate(zip(phi.breakpoints, phi.values)):
        left, right = phi.limits(i)
        if v != left:
            left_bad.append(b)
        if v != right:
            right_bad.append(b)
    return ContinuityReport(not left_bad, not right_bad, tuple(left_bad), tuple(right_bad))


def negate(phi: PiecewiseAffineMap) -> PiecewiseAffineMap:
    """Pointwise ``-phi``; the direction flips."""
    flipped = Direction.NONINCREASING if phi.direction is Direction.NONDECREASING else Direction.NONDECREASING
    return PiecewiseAffineMap(
        flipped,
        phi.breakpoints,
        tuple(-p for p in phi.pieces),
        tuple(-v for v in phi.values),
    )


def _intervals(phi: PiecewiseAffineMap):
    bounds = (NEG_INF,) + phi.breakpoints + (POS_INF,)
    return zip(bounds, bounds[1:], phi.pieces)


def _require_nondecreasing(phi: PiecewiseAffineMap) -> None:
    if phi.direction is not Direction.NONDECREASING:
        raise DirectionError("generalized inverse defined here for nondecreasing maps only")


def preimage_sup(phi: PiecewiseAffineMap, y) -> ExtendedReal:
    """``sup{x : phi(x) <= y}``; ``-inf`` for an empty set."""
    _require_nondecreasing(phi)
    y = Fraction(y)
    best: ExtendedReal = NEG_INF
    for lo, hi, piece in _intervals(phi):
        if piece.slope == 0:
            if piece.intercept <= y:
                best = max(best, hi)
        else:
            root = (y - piece.intercept) / piece.slope
            if root > lo:
                best = max(best, min(root, hi))
    for b, v in zip(phi.breakpoints, phi.values):
        if v <= y:
            best = max(best, b)
    return best


def preimage_inf(phi: PiecewiseAffineMap, y) -> ExtendedReal:
    """``inf{x : phi(x) >= y}``; ``+inf`` for an empty set."""
    _require_nondecreasing(phi)
    y = Fraction(y)
    best: ExtendedReal = POS_INF
    for lo, hi, piece in _intervals(phi):
        if piece.slope == 0:
            if piece.intercept >= y:
                best = min(best, lo)
        else:
            root = (y - piece.intercept) / piece.slope
            if root < hi:
                best = min(best, max(root, lo))
    for b, v in zip(phi.breakpoints, phi.values):
        if v >= y:
            best = min(best, b)
    return best


def pushforward(d: Distribution, phi: PiecewiseAffineMap) -> Distribution:
    """Exact law of ``phi(X)``.

    Segments are cut at interior breakpoints; each piece is pushed through
    its affine formula.  A flat piece collapses its part of a segment into an
    atom.  Breakpoint values only matter for atoms sitting on breakpoints.
    """
    atoms = [Atom(evaluate(phi, a.location), a.mass) for a in d.atoms]
    segments = []
    bps = phi.breakpoints
    for s in d.segments:
        lo_i = bisect_left(bps, s.left)
        if lo_i < len(bps) and bps[lo_i] == s.left:
            lo_i += 1
        cuts = [s.left] + [b for b in bps[lo_i:] if b < s.right] + [s.right]
        piece_i = lo_i
        for a, b in zip(cuts, cuts[1:]):
            piece = phi.pieces[piece_i]
            piece_i += 1
            m = s.mass * (b - a) / (s.right - s.left)
            if piece.slope == 0:
                atoms.append(Atom(piece.intercept, m))
            else:
                ya, yb = piece(a), piece(b)
                segments.append(Segment(min(ya, yb), max(ya, yb), m))
    return canonicalize(Distribution(tuple(atoms), tuple(segments)))


# -- document format -------------------------------------------------------

def _num(q: Fraction) -> str:
    return format_decimal(q) if terminating(q) else format_rational(q)


def to_document(phi: PiecewiseAffineMap) -> dict:
    return {
        "direction": phi.direction.value,
        "breakpoints": [_num(b) for b in phi.breakpoints],
        "pieces": [{"slope": _num(p.slope), "intercept": _num(p.intercept)} for p in phi.pieces],
        "values": [_num(v) for v in phi.values],
    }


def _parse(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise MapError([f"{where}: numbers must be decimal strings, got {raw!r}"])
    try:
        return parse_rational(str(raw))
    except ValueError as exc:
        raise MapError([f"{where}: {exc}"]) from None


def from_document(doc: dict) -> PiecewiseAffineMap:
    if not isinstance(doc, dict):
        raise MapError(["document must be an object"])
    unknown = set(doc) - {"direction", "breakpoints", "pieces", "values"}
    if unknown:
        raise MapError([f"unknown keys {sorted(unknown)}"])
    try:
        direction = Direction(doc.get("direction", "nondecreasing"))
    except ValueError:
        raise MapError([f"direction must be 'nondecreasing' or 'nonincreasing', got {doc.get('direction')!r}"]) from None
    pieces = []
    for i, p in enumerate(doc.get("pieces", [])):
        if not isinstance(p, dict) or "slope" not in p or "intercept" not in p:
            raise MapError([f"pieces[{i}]: needs 'slope' and 'intercept'"])
        pieces.append(Affine(_parse(p["slope"], f"pieces[{i}].slope"), _parse(p["intercept"], f"pieces[{i}].intercept")))
    return PiecewiseAffineMap(
        direction,
        tuple(_parse(b, f"breakpoints[{i}]") for i, b in enumerate(doc.get("breakpoints", []))),
        tuple(pieces),
        tuple(_parse(v, f"values[{i}]") for i, v in enumerate(doc.get("values", []))),
    )


def load(path) -> PiecewiseAffineMap:
    with open(path, encoding="utf-8") as fh:
        return from_document(json.load(fh))


def dump(phi: PiecewiseAffineMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_document(phi), fh, indent=2)
        fh.write("\n")
