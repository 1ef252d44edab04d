"""Left and right quantile functions.

``lq(p) = inf{x : F(x) >= p}`` and ``rq(p) = inf{x : F(x) > p}``, computed
exactly by one walk over the knot table.  ``oracle_left_quantile`` reaches
the same number by candidate enumeration on a direct scan of the components
and exists to cross-check the walk.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _knots
from .distribution import Distribution, EvaluatedCdf
from .numeric import NEG_INF, POS_INF, ExtendedReal


class LevelError(ValueError):
    """Probability level outside the admissible range."""


def _level(p, lo_open: bool = False, hi_open: bool = False) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1 or (lo_open and p == 0) or (hi_open and p == 1):
        lo = "(" if lo_open else "["
        hi = ")" if hi_open else "]"
        raise LevelError(f"probability level {p} outside {lo}0, 1{hi}")
    return p


def left_quantile(d: Distribution, p) -> ExtendedReal:
    p = _level(p)
    if p == 0:
        return NEG_INF
    return _knots.left_walk(*d.knots, p)


def right_quantile(d: Distribution, p) -> ExtendedReal:
    p = _level(p)
    if p == 1:
        return POS_INF
    return _knots.right_walk(*d.knots, p)


@dataclass(frozen=True)
class QuantileInterval:
    lower: ExtendedReal
    upper: ExtendedReal

    def __contains__(self, y) -> bool:
        return self.lower <= y <= self.upper


def quantile_interval(d: Distribution, p) -> QuantileInterval:
    """``[lq(p), rq(p)]``, which equals ``{y : F°(y) <= p <= F(y)}`` for 0 < p < 1."""
    p = _level(p, lo_open=True, hi_open=True)
    return QuantileInterval(left_quantile(d, p), right_quantile(d, p))


# -- oracle ----------------------------------------------------------------

def scan_cdf(d: Distribution, x: Fraction) -> EvaluatedCdf:
    """Direct O(n) sum over every component; shares no code with the knot table."""
    strict = Fraction(0)
    at = Fraction(0)
    for a in d.atoms:
        if a.location < x:
            strict += a.mass
        elif a.location == x:
            at += a.mass
    for s in d.segments:
        if s.right <= x:
            strict += s.mass
        elif s.left < x:
            strict += s.mass * (x - s.left) / (s.right - s.left)
    return EvaluatedCdf(strict, strict + at)


def oracle_left_quantile(d: Distribution, p) -> ExtendedReal:
    """Left quantile by enumerating every point where ``F`` can first reach ``p``.

    The candidates are atom locations, segment endpoints and, for every gap
    between consecutive such coordinates, the root of the linear equation
    ``F(x) = p`` on that gap.  The smallest candidate with ``F >= p`` is
    returned after checking that ``F < p`` everywhere to its left.
    """
    p = _level(p, lo_open=True)
    coords = {a.location for a in d.atoms}
    for s in d.segments:
        coords.update((s.left, s.right))
    coords = sorted(coords)
    candidates = set(coords)
    for a, b in zip(coords, coords[1:]):
        fa = scan_cdf(d, a).weak
        fb = scan_cdf(d, b).strict
        if fa < p <= fb:
            candidates.add(a + (p - fa) * (b - a) / (fb - fa))
    ordered = sorted(candidates)
    best = next(c for c in ordered if scan_cdf(d, c).weak >= p)
    # F is linear between consecutive candidates, so the candidates and
    # midpoints below ``best`` (plus one point left of everything) cover x < best.
    below = [c for c in ordered if c < best]
    probes = below + [(a + b) / 2 for a, b in zip(below, below[1:] + [best])]
    probes.append((below[0] if below else best) - 1)
    for x in probes:
        if scan_cdf(d, x).weak >= p:
            raise AssertionError(f"oracle: F({x}) >= {p} left of candidate {best}")
    return best
