from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from qequiv.distribution import Atom, Distribution, Segment, canonicalize
from qequiv.transform import PiecewiseAffineMap, pushforward

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


@pytest.fixture
def uniform():
    return Distribution.uniform(0, 1)


@pytest.fixture
def step_map():
    """x below 1/2, x + 5 from 1/2 on (value 11/2 at the jump)."""
    return PiecewiseAffineMap.build("nondecreasing", [F(1, 2)], [(1, 0), (1, 5)], [F(11, 2)])


@pytest.fixture
def pushed(uniform, step_map):
    return pushforward(uniform, step_map)


@pytest.fixture
def two_atoms():
    return Distribution.build(atoms=[(1, F(1, 2)), (2, F(1, 2))])


# -- independent oracles -------------------------------------------------------

def brute_cdf(d, x):
    """(P(X < x), P(X <= x)) by summing every component."""
    below = F(0)
    at = F(0)
    for a in d.atoms:
        if a.location < x:
            below += a.mass
        elif a.location == x:
            at += a.mass
    for s in d.segments:
        covered = min(max(x - s.left, 0), s.right - s.left)
        below += s.mass * covered / (s.right - s.left)
    return below, below + at


def coordinates(d):
    xs = {a.location for a in d.atoms}
    for s in d.segments:
        xs.update((s.left, s.right))
    return sorted(xs)


# -- hypothesis strategies -----------------------------------------------------

small_fractions = st.builds(
    F, st.integers(-40, 40), st.sampled_from([1, 2, 3, 4, 8])
)


@st.composite
def distributions(draw, max_atoms=6, max_segments=3):
    ends = sorted(set(draw(st.lists(small_fractions, max_size=2 * max_segments))))
    segs = [(ends[i], ends[i + 1]) for i in range(0, len(ends) - 1, 2)]
    locs = draw(st.lists(small_fractions | st.sampled_from(ends or [F(0)]), min_size=0 if segs else 1, max_size=max_atoms))
    weights = draw(st.lists(st.integers(1, 9), min_size=len(locs) + len(segs), max_size=len(locs) + len(segs)))
    total = sum(weights)
    atoms = tuple(Atom(x, F(w, total)) for x, w in zip(locs, weights))
    segments = tuple(Segment(a, b, F(w, total)) for (a, b), w in zip(segs, weights[len(locs):]))
    return canonicalize(Distribution(atoms, segments))


levels = st.builds(F, st.integers(0, 24), st.just(24)) | st.builds(F, st.integers(0, 7), st.just(7))


@st.composite
def monotone_maps(draw, kind="any"):
    bps = sorted(set(draw(st.lists(small_fractions, max_size=4))))
    slopes = st.sampled_from([F(0), F(1, 2), F(1), F(2), F(3)])
    pieces = [(draw(slopes), draw(small_fractions))]
    values = []
    for b in bps:
        left = pieces[-1][0] * b + pieces[-1][1]
        jump = draw(st.sampled_from([F(0), F(1), F(5, 2), F(7)]))
        right = left + jump
        if kind == "left":
            v = left
        elif kind == "right":
            v = right
        else:
            v = draw(st.sampled_from([left, right, (left + right) / 2]))
        values.append(v)
        s = draw(slopes)
        pieces.append((s, right - s * b))
    return PiecewiseAffineMap.build("nondecreasing", bps, pieces, values)
