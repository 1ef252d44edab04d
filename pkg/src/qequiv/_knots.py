"""Knot tables: the CDF of a distribution sampled at every coordinate.

A knot table is three parallel lists: sorted coordinates ``xs`` and, at each
coordinate, ``strict = P(X < x)`` and ``weak = P(X <= x)``.  Between two
consecutive knots the CDF is linear and continuous, running from
``weak[i-1]`` to ``strict[i]``.
"""
from bisect import bisect_left
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def build_knots(atom_locs, atom_masses, seg_lefts, seg_rights, seg_masses):
    coords = sorted(set(atom_locs).union(seg_lefts, seg_rights))
    n = len(coords)
    strict = [_ZERO] * n
    weak = [_ZERO] * n
    na = len(atom_locs)
    ns = len(seg_lefts)
    ia = 0
    js = 0
    acc = _ZERO
    prev = None
    for i in range(n):
        x = coords[i]
        if prev is not None:
            while js < ns and seg_rights[js] <= prev:
                js += 1
            if js < ns and seg_lefts[js] <= prev and x <= seg_rights[js]:
                acc = acc + seg_masses[js] * (x - prev) / (seg_rights[js] - seg_lefts[js])
        strict[i] = acc
        if ia < na and atom_locs[ia] == x:
            acc = acc + atom_masses[ia]
            ia += 1
        weak[i] = acc
        prev = x
    return coords, strict, weak


def cdf_at(xs, strict, weak, x):
    n = len(xs)
    i = bisect_left(xs, x)
    if i < n and xs[i] == x:
        return strict[i], weak[i]
    if i == 0:
        return _ZERO, _ZERO
    if i == n:
        return weak[n - 1], weak[n - 1]
    lo = weak[i - 1]
    v = lo + (strict[i] - lo) * (x - xs[i - 1]) / (xs[i] - xs[i - 1])
    return v, v


def left_walk(xs, strict, weak, p):
    """inf{x : F(x) >= p} for 0 < p <= 1."""
    n = len(xs)
    for i in range(n):
        if strict[i] >= p:
            # crossing inside (xs[i-1], xs[i]]; i > 0 because strict[0] == 0 < p
            lo = weak[i - 1]
            x0 = xs[i - 1]
            return x0 + (p - lo) * (xs[i] - x0) / (strict[i] - lo)
        if weak[i] >= p:
            return xs[i]
    raise ValueError(f"level {p} exceeds total mass")


def right_walk(xs, strict, weak, p):
    """inf{x : F(x) > p} for 0 <= p < 1."""
    n = len(xs)
    for i in range(n):
        if strict[i] > p:
            lo = weak[i - 1]
            x0 = xs[i - 1]
            return x0 + (p - lo) * (xs[i] - x0) / (strict[i] - lo)
        if weak[i] > p:
            return xs[i]
    raise ValueError(f"level {p} is not below total mass")
