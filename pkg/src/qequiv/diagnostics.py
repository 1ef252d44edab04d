"""Executable equivariance theorems and a seeded counterexample search.

Every ``check_*`` function evaluates both sides of one identity exactly and
reports whether its hypotheses held.  Failed hypotheses are reported, never
raised, so the same calls serve as probes on the wrong side of the boundary.
A report whose hypotheses hold but whose verdict is false is a library bug.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .distribution import Atom, Distribution, Segment, canonicalize, mass_open, reflect
from .numeric import ExtendedReal, format_rational, is_finite
from .quantile import left_quantile, right_quantile
from .transform import (
    Affine,
    Direction,
    DirectionError,
    PiecewiseAffineMap,
    continuity,
    evaluate,
    negate,
    pushforward,
)


class TheoremId(str, Enum):
    LEFT_EQUIVARIANCE = "left-equivariance"
    RIGHT_EQUIVARIANCE = "right-equivariance"
    DECREASING_A = "decreasing-a"
    DECREASING_B = "decreasing-b"
    SYMMETRY = "symmetry"
    SANDWICH_LQ = "sandwich-lq"
    SANDWICH_RQ = "sandwich-rq"


class DropHypothesis(str, Enum):
    NONE = "none"
    LEFT_CONTINUITY = "left-continuity"
    RIGHT_CONTINUITY = "right-continuity"


UNDEFINED_NOTE = "rhs undefined: quantile is infinite, use p in (0,1)"


@dataclass(frozen=True)
class Case:
    dist: Distribution
    phi: Optional[PiecewiseAffineMap]
    p: Fraction


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: TheoremId
    hypotheses: tuple[tuple[str, bool], ...]
    lhs: Optional[ExtendedReal]
    rhs: Optional[ExtendedReal]
    equal: bool
    ploss: Optional[Fraction] = None
    interval: Optional[tuple[ExtendedReal, ExtendedReal]] = None
    note: Optional[str] = None
    case: Optional[Case] = field(default=None, compare=False)

    @property
    def hypotheses_hold(self) -> bool:
        return all(ok for _, ok in self.hypotheses)

    @property
    def failed_hypotheses(self) -> list[str]:
        return [name for name, ok in self.hypotheses if not ok]

    @property
    def member(self) -> Optional[bool]:
        if self.interval is None or self.lhs is None:
            return None
        lo, hi = self.interval
        return lo <= self.lhs <= hi

    @property
    def holds(self) -> bool:
        """The theorem's conclusion: equality, or membership with zero loss for the sandwich."""
        if self.theorem_id in (TheoremId.SANDWICH_LQ, TheoremId.SANDWICH_RQ):
            return bool(self.member) and self.ploss == 0
        return self.equal

    @property
    def is_violation(self) -> bool:
        return self.hypotheses_hold and not self.holds

    def line(self) -> str:
        failed = self.failed_hypotheses
        hyp = "OK" if not failed else f"FAIL({','.join(failed)})"
        parts = [
            self.theorem_id.value,
            f"hypotheses={hyp}",
            f"lhs={_fmt(self.lhs)}",
            f"rhs={_fmt(self.rhs)}",
            f"equal={str(self.equal).lower()}",
            f"ploss={_fmt(self.ploss) if self.ploss is not None else '-'}",
        ]
        if self.interval is not None:
            parts.append(f"interval=[{_fmt(self.interval[0])},{_fmt(self.interval[1])}]")
            parts.append(f"member={str(self.member).lower()}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.line()


def _fmt(x) -> str:
    return "undefined" if x is None else format_rational(x)


def probability_loss(d: Distribution, a: ExtendedReal, b: ExtendedReal) -> Fraction:
    """``P(a < Y < b) + P(b < Y < a)``."""
    return mass_open(d, a, b) + mass_open(d, b, a)


def _apply(phi: PiecewiseAffineMap, q: ExtendedReal) -> Optional[Fraction]:
    return evaluate(phi, q) if is_finite(q) else None


def _report(theorem, hyps, lhs, rhs, case, mapped=None, **extra) -> TheoremReport:
    """``mapped`` is the side obtained by applying phi to a quantile of X."""
    note = None
    if mapped is None:
        hyps = hyps + (("finite-quantile", False),)
        note = UNDEFINED_NOTE
    else:
        hyps = hyps + (("finite-quantile", True),)
    equal = lhs is not None and rhs is not None and lhs == rhs
    return TheoremReport(theorem, hyps, lhs, rhs, equal, note=note, case=case, **extra)


def check_left_equivariance(d: Distribution, phi: PiecewiseAffineMap, p) -> TheoremReport:
    """``lq_{phi(X)}(p)`` against ``phi(lq_X(p))``."""
    p = Fraction(p)
    cont = continuity(phi)
    hyps = (
        ("nondecreasing", phi.direction is Direction.NONDECREASING),
        ("left-continuity", cont.left_continuous),
    )
    lhs = left_quantile(pushforward(d, phi), p)
    rhs = _apply(phi, left_quantile(d, p))
    return _report(TheoremId.LEFT_EQUIVARIANCE, hyps, lhs, rhs, Case(d, phi, p), rhs)


def check_right_equivariance(d: Distribution, phi: PiecewiseAffineMap, p) -> TheoremReport:
    """``rq_{phi(X)}(p)`` against ``phi(rq_X(p))``."""
    p = Fraction(p)
    cont = continuity(phi)
    hyps = (
        ("nondecreasing", phi.direction is Direction.NONDECREASING),
        ("right-continuity", cont.right_continuous),
    )
    lhs = right_quantile(pushforward(d, phi), p)
    rhs = _apply(phi, right_quantile(d, p))
    return _report(TheoremId.RIGHT_EQUIVARIANCE, hyps, lhs, rhs, Case(d, phi, p), rhs)


def check_decreasing_equivariance(d: Distribution, phi: PiecewiseAffineMap, p, variant: str = "a") -> TheoremReport:
    """Variant ``a``: ``lq_{phi(X)}(p) = phi(rq_X(1-p))`` for right-continuous phi.
    Variant ``b``: ``rq_{phi(X)}(p) = phi(lq_X(1-p))`` for left-continuous phi.
    """
    p = Fraction(p)
    cont = continuity(phi)
    y = pushforward(d, phi)
    decreasing = ("nonincreasing", phi.direction is Direction.NONINCREASING)
    if variant == "a":
        hyps = (decreasing, ("right-continuity", cont.right_continuous))
        lhs = left_quantile(y, p)
        rhs = _apply(phi, right_quantile(d, 1 - p))
        theorem = TheoremId.DECREASING_A
    elif variant == "b":
        hyps = (decreasing, ("left-continuity", cont.left_continuous))
        lhs = right_quantile(y, p)
        rhs = _apply(phi, left_quantile(d, 1 - p))
        theorem = TheoremId.DECREASING_B
    else:
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    return _report(theorem, hyps, lhs, rhs, Case(d, phi, p), rhs)


def check_symmetry(d: Distribution, p) -> TheoremReport:
    """``lq_X(p)`` against ``-rq_{-X}(1-p)``; holds for every distribution."""
    p = Fraction(p)
    lhs = left_quantile(d, p)
    rhs = -right_quantile(reflect(d), 1 - p)
    return TheoremReport(TheoremId.SYMMETRY, (), lhs, rhs, lhs == rhs, case=Case(d, None, p))


def check_sandwich(d: Distribution, phi: PiecewiseAffineMap, p) -> tuple[TheoremReport, TheoremReport]:
    """For nondecreasing phi, ``phi(lq_X(p))`` and ``phi(rq_X(p))`` lie in
    ``[lq_Y(p), rq_Y(p)]`` with zero probability loss, continuity or not.
    """
    if phi.direction is not Direction.NONDECREASING:
        raise DirectionError("sandwich check needs a nondecreasing map")
    p = Fraction(p)
    y = pushforward(d, phi)
    lq_y, rq_y = left_quantile(y, p), right_quantile(y, p)
    hyps = (("nondecreasing", True),)
    case = Case(d, phi, p)
    reports = []
    for theorem, x_side, y_side in (
        (TheoremId.SANDWICH_LQ, left_quantile(d, p), lq_y),
        (TheoremId.SANDWICH_RQ, right_quantile(d, p), rq_y),
    ):
        image = _apply(phi, x_side)
        ploss = probability_loss(y, image, y_side) if image is not None else None
        reports.append(
            _report(theorem, hyps, image, y_side, case, image, ploss=ploss, interval=(lq_y, rq_y))
        )
    return reports[0], reports[1]


def all_checks(d: Distribution, p, *, left=None, right=None, dec_a=None, dec_b=None, any_up=None) -> list[TheoremReport]:
    """Run every checker whose map was supplied, plus symmetry."""
    out = [check_symmetry(d, p)]
    if left is not None:
        out.append(check_left_equivariance(d, left, p))
    if right is not None:
        out.append(check_right_equivariance(d, right, p))
    if dec_a is not None:
        out.append(check_decreasing_equivariance(d, dec_a, p, "a"))
    if dec_b is not None:
        out.append(check_decreasing_equivariance(d, dec_b, p, "b"))
    if any_up is not None:
        out.extend(check_sandwich(d, any_up, p))
    return out


# -- random inputs -----------------------------------------------------------

_DENOMINATORS = (1, 1, 2, 3, 4, 8, 16, 64)


def random_rational(rng: random.Random, span: int = 8) -> Fraction:
    den = rng.choice(_DENOMINATORS)
    return Fraction(rng.randint(-span * den, span * den), den)


def random_distribution(rng: random.Random, max_atoms: int = 8, max_segments: int = 4) -> Distribution:
    """Random atoms + disjoint segments, coordinates with denominators <= 64.

    Atoms often land on segment endpoints or interiors to exercise mixed knots.
    """
    n_seg = rng.randint(0, max_segments)
    ends = sorted({random_rational(rng) for _ in range(2 * n_seg)})
    segs = []
    i = 0
    while i + 1 < len(ends):
        segs.append((ends[i], ends[i + 1]))
        # touching neighbours are allowed: reuse the right end as next left end
        i += 1 if rng.random() < 0.3 else 2
    n_atoms = rng.randint(0 if segs else 1, max_atoms)
    locs = []
    for _ in range(n_atoms):
        r = rng.random()
        if ends and r < 0.3:
            locs.append(rng.choice(ends))
        elif segs and r < 0.45:
            a, b = rng.choice(segs)
            locs.append(a + (b - a) * Fraction(rng.randint(1, 7), 8))
        else:
            locs.append(random_rational(rng))
    weights = [rng.randint(1, 12) for _ in range(len(locs) + len(segs))]
    if rng.random() < 0.25:
        # equal weights make flat CDF stretches and ties at simple levels
        weights = [1] * len(weights)
    total = sum(weights)
    atoms = [Atom(x, Fraction(w, total)) for x, w in zip(locs, weights)]
    segments = [Segment(a, b, Fraction(w, total)) for (a, b), w in zip(segs, weights[len(locs):])]
    return canonicalize(Distribution(tuple(atoms), tuple(segments)))


def random_level(rng: random.Random, d: Distribution, allow_ends: bool = True) -> Fraction:
    """A level in [0, 1], often one of the CDF's attained values."""
    r = rng.random()
    _, strict, weak = d.knots
    if r < 0.45:
        p = rng.choice(strict + weak)
    else:
        den = rng.choice((2, 3, 4, 5, 8, 10, 64))
        p = Fraction(rng.randint(0, den), den)
    if not allow_ends and p in (0, 1):
        return Fraction(1, 2)
    return p


def _anchors(d: Distribution, p: Fraction) -> list[Fraction]:
    xs = list(d.knots[0])
    for q in (left_quantile(d, p), right_quantile(d, p)):
        if is_finite(q):
            xs.append(q)
    return xs


def random_map(
    rng: random.Random,
    continuity_kind: str = "any",
    anchors: Optional[list] = None,
    direction: Direction = Direction.NONDECREASING,
    max_breakpoints: int = 4,
) -> PiecewiseAffineMap:
    """Random monotone piecewise-affine map.

    ``continuity_kind`` is one of ``left``, ``right``, ``both``, ``any``,
    ``not-left``, ``not-right``.  Breakpoints are drawn partly from
    ``anchors`` so that they hit quantiles and atoms of a test distribution.
    """
    need_break = continuity_kind in ("not-left", "not-right")
    k = rng.randint(1 if need_break else 0, max_breakpoints)
    pts = set()
    while len(pts) < k:
        if anchors and rng.random() < 0.6:
            pts.add(Fraction(rng.choice(anchors)))
        else:
            pts.add(random_rational(rng))
    bps = sorted(pts)
    forced = rng.randrange(k) if need_break else -1

    def slope() -> Fraction:
        return rng.choice((Fraction(0), Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2), Fraction(3), Fraction(rng.randint(1, 9), rng.randint(1, 9))))

    s = slope()
    pieces = [Affine(s, random_rational(rng))]
    values = []
    for i, b in enumerate(bps):
        left = pieces[-1](b)
        jump = Fraction(0) if rng.random() < 0.4 else Fraction(rng.randint(1, 32), rng.choice((1, 2, 4, 8)))
        kind = continuity_kind
        if kind in ("not-left", "not-right"):
            if i == forced:
                jump = jump or Fraction(1)
            else:
                kind = "any"
        if kind == "both":
            jump = Fraction(0)
        right = left + jump
        if kind == "left":
            v = left
        elif kind == "right":
            v = right
        elif kind == "not-left":
            v = right if rng.random() < 0.5 else left + jump * Fraction(rng.randint(1, 3), 4)
        elif kind == "not-right":
            v = left if rng.random() < 0.5 else left + jump * Fraction(rng.randint(1, 3), 4)
        else:
            v = rng.choice((left, right, (left + right) / 2))
        values.append(v)
        s = slope()
        pieces.append(Affine(s, right - s * b))
    phi = PiecewiseAffineMap(Direction.NONDECREASING, tuple(bps), tuple(pieces), tuple(values))
    return phi if direction is Direction.NONDECREASING else negate(phi)


# -- search ------------------------------------------------------------------

def trial_rng(seed: int, index: int) -> random.Random:
    """Per-trial generator; depends only on (seed, index), never on trial order."""
    return random.Random(f"qequiv:{seed}:{index}")


def hypothesis_cases(rng: random.Random) -> tuple[Distribution, Fraction, dict]:
    """One distribution, level and a map satisfying each theorem's hypotheses."""
    d = random_distribution(rng)
    p = random_level(rng, d)
    anchors = _anchors(d, p)
    maps = {
        "left": random_map(rng, rng.choice(("left", "both")), anchors),
        "right": random_map(rng, rng.choice(("right", "both")), anchors),
        "dec_a": random_map(rng, rng.choice(("right", "both")), anchors, Direction.NONINCREASING),
        "dec_b": random_map(rng, rng.choice(("left", "both")), anchors, Direction.NONINCREASING),
        "any_up": random_map(rng, "any", anchors),
    }
    return d, p, maps


def _violation_case(rng: random.Random, drop: DropHypothesis):
    d = random_distribution(rng)
    p = random_level(rng, d, allow_ends=False)
    kind = "not-left" if drop is DropHypothesis.LEFT_CONTINUITY else "not-right"
    phi = random_map(rng, kind, _anchors(d, p))
    check = check_left_equivariance if drop is DropHypothesis.LEFT_CONTINUITY else check_right_equivariance
    return check(d, phi, p)


def search_counterexamples(seed: int, trials: int, drop_hypothesis="none") -> list[TheoremReport]:
    """Seeded random search for reports whose conclusion fails.

    With ``drop_hypothesis`` naming a continuity condition, maps violating it
    by construction are fed to the matching equivariance check and every
    unequal report is returned.  With ``none`` all hypotheses are satisfied;
    any report returned is a bug and has been shrunk to a small repro.
    """
    drop = DropHypothesis(drop_hypothesis)
    if trials <= 0:
        raise ValueError("trials must be positive")
    found = []
    for i in range(trials):
        rng = trial_rng(seed, i)
        if drop is DropHypothesis.NONE:
            d, p, maps = hypothesis_cases(rng)
            for rep in all_checks(d, p, **maps):
                if rep.is_violation:
                    found.append(shrink(rep))
        else:
            rep = _violation_case(rng, drop)
            if not rep.equal and rep.rhs is not None:
                found.append(rep)
    return found


# -- shrinking -----------------------------------------------------------------

_RERUN: dict[TheoremId, Callable[[Case], TheoremReport]] = {
    TheoremId.LEFT_EQUIVARIANCE: lambda c: check_left_equivariance(c.dist, c.phi, c.p),
    TheoremId.RIGHT_EQUIVARIANCE: lambda c: check_right_equivariance(c.dist, c.phi, c.p),
    TheoremId.DECREASING_A: lambda c: check_decreasing_equivariance(c.dist, c.phi, c.p, "a"),
    TheoremId.DECREASING_B: lambda c: check_decreasing_equivariance(c.dist, c.phi, c.p, "b"),
    TheoremId.SYMMETRY: lambda c: check_symmetry(c.dist, c.p),
    TheoremId.SANDWICH_LQ: lambda c: check_sandwich(c.dist, c.phi, c.p)[0],
    TheoremId.SANDWICH_RQ: lambda c: check_sandwich(c.dist, c.phi, c.p)[1],
}


def _smaller_dists(d: Distribution) -> Iterator[Distribution]:
    parts = [("a", a) for a in d.atoms] + [("s", s) for s in d.segments]
    if len(parts) <= 1:
        return
    for skip in range(len(parts)):
        kept = [x for j, x in enumerate(parts) if j != skip]
        total = sum(x.mass for _, x in kept)
        atoms = tuple(Atom(x.location, x.mass / total) for kind, x in kept if kind == "a")
        segs = tuple(Segment(x.left, x.right, x.mass / total) for kind, x in kept if kind == "s")
        yield canonicalize(Distribution(atoms, segs))


def _smaller_maps(phi: PiecewiseAffineMap) -> Iterator[PiecewiseAffineMap]:
    k = len(phi.breakpoints)
    for i in range(k):
        # drop breakpoint i by extending piece i over piece i+1's interval
        bps = phi.breakpoints[:i] + phi.breakpoints[i + 1:]
        pieces = phi.pieces[: i + 1] + phi.pieces[i + 2:]
        values = phi.values[:i] + phi.values[i + 1:]
        try:
            yield PiecewiseAffineMap(phi.direction, bps, pieces, values)
        except ValueError:
            continue


def shrink(report: TheoremReport, max_rounds: int = 50) -> TheoremReport:
    """Greedy component removal while the violation persists."""
    rerun = _RERUN[report.theorem_id]
    current = report
    for _ in range(max_rounds):
        case = current.case
        options = [replace(case, dist=d) for d in _smaller_dists(case.dist)]
        if case.phi is not None:
            options += [replace(case, phi=m) for m in _smaller_maps(case.phi)]
        for option in options:
            try:
                rep = rerun(option)
            except (ValueError, ZeroDivisionError):
                continue
            if rep.is_violation:
                current = rep
                break
        else:
            return current
    return current
