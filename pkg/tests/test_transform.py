import json
from collections import defaultdict
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_cdf, distributions, monotone_maps, small_fractions
from qequiv.distribution import Distribution, validate
from qequiv.numeric import NEG_INF, POS_INF, is_finite
from qequiv.transform import (
    Direction,
    DirectionError,
    MapError,
    PiecewiseAffineMap,
    continuity,
    evaluate,
    from_document,
    negate,
    preimage_inf,
    preimage_sup,
    pushforward,
    to_document,
)

identity = PiecewiseAffineMap.identity()


def test_eval_examples(step_map):
    assert evaluate(step_map, F(3, 10)) == F(3, 10)
    assert evaluate(step_map, F(1, 2)) == F(11, 2)
    assert evaluate(step_map, F(7, 10)) == F(57, 10)
    assert evaluate(identity, 7) == 7


def test_continuity_examples(step_map):
    rep = continuity(step_map)
    assert (rep.left_continuous, rep.right_continuous, rep.witnesses) == (False, True, (F(1, 2),))
    rep = continuity(identity)
    assert (rep.left_continuous, rep.right_continuous, rep.witnesses) == (True, True, ())
    between = PiecewiseAffineMap.build("nondecreasing", [0], [(0, 0), (0, 2)], [1])
    rep = continuity(between)
    assert (rep.left_continuous, rep.right_continuous, rep.witnesses) == (False, False, (0,))


def test_preimage_examples(step_map):
    flat = PiecewiseAffineMap.constant(0)
    assert preimage_sup(step_map, 2) == F(1, 2)
    assert preimage_sup(identity, 3) == 3
    assert preimage_sup(flat, -1) == NEG_INF
    assert preimage_sup(flat, 0) == POS_INF
    assert preimage_inf(step_map, 2) == F(1, 2)
    assert preimage_inf(identity, 3) == 3
    assert preimage_inf(flat, 1) == POS_INF
    assert preimage_inf(flat, 0) == NEG_INF


def test_preimage_needs_nondecreasing():
    with pytest.raises(DirectionError):
        preimage_sup(negate(identity), 0)
    with pytest.raises(DirectionError):
        preimage_inf(negate(identity), 0)


def test_negate_examples(step_map):
    neg = negate(identity)
    assert neg.direction is Direction.NONINCREASING and neg.pieces[0].slope == -1
    assert evaluate(negate(step_map), F(1, 2)) == F(-11, 2)
    assert negate(negate(step_map)) == step_map


def test_invalid_maps_rejected():
    with pytest.raises(MapError):
        PiecewiseAffineMap.build("nondecreasing", [0], [(1, 0), (1, -1)], [0])
    with pytest.raises(MapError):
        PiecewiseAffineMap.build("nondecreasing", [], [(-1, 0)], [])
    with pytest.raises(MapError):
        PiecewiseAffineMap.build("nondecreasing", [1, 0], [(1, 0)] * 3, [1, 0])
    with pytest.raises(MapError):
        PiecewiseAffineMap.build("nonincreasing", [0], [(-1, 0), (-1, 0)], [1])


def test_pushforward_examples(uniform, step_map, pushed):
    assert pushed == Distribution.build(segments=[(0, F(1, 2), F(1, 2)), (F(11, 2), 6, F(1, 2))])
    assert pushforward(Distribution.point(3), identity) == Distribution.point(3)
    assert pushforward(uniform, PiecewiseAffineMap.constant(F(7, 3))) == Distribution.point(F(7, 3))


def test_pushforward_through_decreasing_and_flat_pieces():
    phi = PiecewiseAffineMap.build("nonincreasing", [1], [(-2, 0), (0, -3)], [-3])
    d = Distribution.build(atoms=[(1, F(1, 4))], segments=[(0, 2, F(3, 4))])
    y = pushforward(d, phi)
    # [0,1) maps onto (-2, 0], [1,2) collapses to -3, the atom at 1 lands on -3
    assert y == Distribution.build(atoms=[(-3, F(5, 8))], segments=[(-2, 0, F(3, 8))])


def test_map_document_round_trip(step_map):
    doc = json.loads(json.dumps(to_document(step_map)))
    assert doc == {"direction": "nondecreasing", "breakpoints": ["0.5"],
                   "pieces": [{"slope": "1", "intercept": "0"}, {"slope": "1", "intercept": "5"}],
                   "values": ["5.5"]}
    assert from_document(doc) == step_map
    with pytest.raises(MapError):
        from_document({"direction": "sideways"})
    with pytest.raises(MapError):
        from_document({"breakpoints": ["0"], "pieces": [{"slope": "1", "intercept": "0"}], "values": ["0"]})


probes = st.builds(F, st.integers(-200, 200), st.sampled_from([1, 2, 3, 8]))


@settings(max_examples=300, deadline=None)
@given(monotone_maps("left"), probes)
def test_preimage_sup_galois_relation(phi, y):
    s = preimage_sup(phi, y)
    if is_finite(s):
        assert evaluate(phi, s) <= y


@settings(max_examples=300, deadline=None)
@given(monotone_maps("right"), probes)
def test_preimage_inf_galois_relation(phi, y):
    s = preimage_inf(phi, y)
    if is_finite(s):
        assert evaluate(phi, s) >= y


@settings(max_examples=300, deadline=None)
@given(monotone_maps(), st.lists(probes, min_size=2, max_size=8))
def test_eval_monotone_including_breakpoints(phi, xs):
    xs = sorted(set(xs) | set(phi.breakpoints))
    ys = [evaluate(phi, x) for x in xs]
    assert all(a <= b for a, b in zip(ys, ys[1:]))
    neg = [evaluate(negate(phi), x) for x in xs]
    assert neg == [-y for y in ys]


@settings(max_examples=300, deadline=None)
@given(distributions(), monotone_maps())
def test_pushforward_is_valid_and_keeps_mass(d, phi):
    y = pushforward(d, phi)
    assert validate(y) == []
    assert validate(pushforward(d, negate(phi))) == []


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(small_fractions, st.integers(1, 6)), min_size=1, max_size=8), monotone_maps())
def test_pushforward_of_atoms_matches_direct_mapping(pairs, phi):
    total = sum(w for _, w in pairs)
    d = Distribution.build(atoms=[(x, F(w, total)) for x, w in pairs])
    law = defaultdict(F)
    for x, w in pairs:
        law[evaluate(phi, x)] += F(w, total)
    assert pushforward(d, phi) == Distribution.build(atoms=list(law.items()))


@settings(max_examples=300, deadline=None)
@given(distributions(), monotone_maps(), probes)
def test_pushforward_cdf_via_preimage(d, phi, t):
    # {x : phi(x) <= t} is (-inf, s] or (-inf, s) with s = sup of the set
    s = preimage_sup(phi, t)
    if s == NEG_INF:
        expected = F(0)
    elif s == POS_INF:
        expected = F(1)
    else:
        strict, weak = brute_cdf(d, s)
        expected = weak if evaluate(phi, s) <= t else strict
    assert brute_cdf(pushforward(d, phi), t)[1] == expected
