"""Exact left/right quantile functions and their equivariance under monotone maps."""
from .distribution import (
    Atom,
    Distribution,
    DistributionError,
    EvaluatedCdf,
    Segment,
    cdf,
    from_empirical,
    mass_open,
    reflect,
    support_bounds,
    validate,
)
from .numeric import NEG_INF, POS_INF, ParseError, compare, parse_decimal, parse_rational
from .quantile import (
    QuantileInterval,
    left_quantile,
    oracle_left_quantile,
    quantile_interval,
    right_quantile,
)
from .transform import (
    Affine,
    ContinuityReport,
    Direction,
    DirectionError,
    MapError,
    PiecewiseAffineMap,
    continuity,
    evaluate,
    negate,
    preimage_inf,
    preimage_sup,
    pushforward,
)
from .diagnostics import (
    TheoremId,
    TheoremReport,
    check_decreasing_equivariance,
    check_left_equivariance,
    check_right_equivariance,
    check_sandwich,
    check_symmetry,
    probability_loss,
    search_counterexamples,
)

__version__ = "0.1.0"

__all__ = [
    "Affine",
    "Atom",
    "ContinuityReport",
    "Direction",
    "DirectionError",
    "Distribution",
    "DistributionError",
    "EvaluatedCdf",
    "MapError",
    "NEG_INF",
    "POS_INF",
    "ParseError",
    "PiecewiseAffineMap",
    "QuantileInterval",
    "Segment",
    "TheoremId",
    "TheoremReport",
    "cdf",
    "check_decreasing_equivariance",
    "check_left_equivariance",
    "check_right_equivariance",
    "check_sandwich",
    "check_symmetry",
    "compare",
    "continuity",
    "evaluate",
    "from_empirical",
    "left_quantile",
    "mass_open",
    "negate",
    "oracle_left_quantile",
    "parse_decimal",
    "parse_rational",
    "preimage_inf",
    "preimage_sup",
    "probability_loss",
    "pushforward",
    "quantile_interval",
    "reflect",
    "right_quantile",
    "search_counterexamples",
    "support_bounds",
    "validate",
]
