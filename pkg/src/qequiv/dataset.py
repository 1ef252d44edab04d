"""Sample medians and the earthquake-magnitude rescaling demo.

The midpoint-averaged median of an even-length sample is not preserved by a
monotone change of scale, while the left and right medians (the left and
right quantiles of the empirical law at 1/2) are.  ``10**x`` and ``log10``
are transcendental, so they are evaluated here to a requested number of
significant digits and never enter the exact core.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence, TextIO, Union

from .distribution import from_empirical
from .numeric import ParseError, format_approx, parse_decimal
from .quantile import left_quantile, right_quantile

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DataVector:
    values: tuple[Fraction, ...]
    sorted: bool

    @classmethod
    def of(cls, values) -> "DataVector":
        vals = tuple(Fraction(v) for v in values)
        return cls(vals, all(a <= b for a, b in zip(vals, vals[1:])))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class EarthquakeRecord:
    ml: Fraction
    amplitude: Fraction

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")


def _vector(v) -> DataVector:
    return v if isinstance(v, DataVector) else DataVector.of(v)


def weighted_median(v) -> Fraction:
    """Middle element for odd n, mean of the two middle elements for even n.

    The input must already be sorted.
    """
    v = _vector(v)
    if not v.values:
        raise ValueError("median of an empty vector")
    if not v.sorted:
        raise ValueError("weighted_median needs sorted data; sort it first")
    n = len(v.values)
    if n % 2:
        return v.values[n // 2]
    return (v.values[n // 2 - 1] + v.values[n // 2]) / 2


def left_median(v) -> Fraction:
    v = _vector(v)
    if not v.values:
        raise ValueError("median of an empty vector")
    return left_quantile(from_empirical(v.values), HALF)


def right_median(v) -> Fraction:
    v = _vector(v)
    if not v.values:
        raise ValueError("median of an empty vector")
    return right_quantile(from_empirical(v.values), HALF)


# -- precision-bounded transcendental functions -----------------------------

def round_sig(x: Decimal, digits: int) -> Decimal:
    if x == 0:
        return Decimal(0)
    quantum = Decimal(1).scaleb(x.adjusted() - digits + 1)
    return x.quantize(quantum, rounding=ROUND_HALF_EVEN)


def _refine(fn, x: Fraction, digits: int, max_prec: int = 2000) -> Decimal:
    # Evaluate with growing working precision until a conservative error
    # interval around the result rounds to a single value.
    if digits < 1:
        raise ValueError("digits must be >= 1")
    prec = digits + 10
    while True:
        with localcontext() as ctx:
            ctx.prec = prec
            arg = Decimal(x.numerator) / Decimal(x.denominator)
            value = fn(ctx, arg)
            slack = abs(value).scaleb(-(prec - 4 - len(str(abs(int(arg))))))
            if value == 0:
                slack = Decimal(1).scaleb(-(prec - 4))
            lo = round_sig(value - slack, digits)
            hi = round_sig(value + slack, digits)
        if lo == hi or prec >= max_prec:
            return round_sig(+value, digits)
        prec += 20


def pow10(x, digits: int) -> Decimal:
    """``10**x`` correctly rounded to ``digits`` significant digits."""
    return _refine(lambda ctx, a: ctx.power(Decimal(10), a), Fraction(x), digits)


def log10(x, digits: int) -> Decimal:
    """``log10(x)`` for x > 0, correctly rounded to ``digits`` significant digits."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log10 of a non-positive number")
    return _refine(lambda ctx, a: ctx.log10(a), x, digits)


def agree_to_digits(a, b, digits: int) -> bool:
    """True when ``a`` and ``b`` round to the same ``digits`` significant digits."""
    da = Decimal(a.numerator) / Decimal(a.denominator) if isinstance(a, Fraction) else Decimal(a)
    db = Decimal(b.numerator) / Decimal(b.denominator) if isinstance(b, Fraction) else Decimal(b)
    with localcontext() as ctx:
        ctx.prec = max(50, digits + 10)
        return round_sig(+da, digits) == round_sig(+db, digits)


# -- demo ----------------------------------------------------------------------

@dataclass(frozen=True)
class MedianComparison:
    name: str
    amplitude: Fraction
    ml: Fraction
    rescaled: Decimal
    agree: bool


@dataclass(frozen=True)
class EarthquakeDemo:
    precision: int
    weighted: MedianComparison
    discrepancy: Fraction
    left: MedianComparison
    right: MedianComparison

    def lines(self) -> list[str]:
        w = self.weighted
        out = [
            f"precision = {self.precision} significant digits",
            f"weighted median A = {_dec(w.amplitude)}",
            f"weighted median M_L = {_dec(w.ml)}",
            f"10^(weighted median M_L) = {w.rescaled}",
            f"discrepancy A - 10^M_L = {_dec(self.discrepancy)}",
            f"weighted medians agree: {'yes' if w.agree else 'no'}",
        ]
        for c in (self.left, self.right):
            out += [
                f"{c.name} median A = {_dec(c.amplitude)}",
                f"{c.name} median M_L = {_dec(c.ml)}",
                f"10^({c.name} median M_L) = {c.rescaled}",
                f"{c.name} medians agree: {'yes' if c.agree else 'no'}",
            ]
        return out


def _dec(q: Fraction) -> str:
    return format_approx(q, 12)


def _compare(name: str, amplitude: Fraction, ml: Fraction, precision: int) -> MedianComparison:
    rescaled = pow10(ml, precision)
    return MedianComparison(name, amplitude, ml, rescaled, agree_to_digits(amplitude, rescaled, precision))


def earthquake_demo(records: Sequence[EarthquakeRecord], precision: int = 7) -> EarthquakeDemo:
    """Medians of amplitude versus 10 to the median magnitude."""
    if not records:
        raise ValueError("earthquake demo needs at least one record")
    amps = DataVector.of(sorted(r.amplitude for r in records))
    mls = DataVector.of(sorted(r.ml for r in records))
    weighted = _compare("weighted", weighted_median(amps), weighted_median(mls), precision)
    return EarthquakeDemo(
        precision=precision,
        weighted=weighted,
        discrepancy=weighted.amplitude - Fraction(weighted.rescaled),
        left=_compare("left", left_median(amps), left_median(mls), precision),
        right=_compare("right", right_median(amps), right_median(mls), precision),
    )


# -- CSV -------------------------------------------------------------------------

class CsvError(ValueError):
    pass


Source = Union[str, Path, TextIO]


def _read_rows(source: Source) -> tuple[list[str], list[list[str]]]:
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise CsvError("empty CSV: a header row is required")
    return [h.strip() for h in rows[0]], rows[1:]


def read_csv(source: Source, columns: Union[str, tuple[str, str]] = ("M_L", "A")):
    """Read one column as a DataVector, or an ``(ml, amplitude)`` column pair as records.

    Every cell is parsed exactly; errors name the data row (1-based) and column.
    """
    header, rows = _read_rows(source)
    names = (columns,) if isinstance(columns, str) else tuple(columns)
    missing = [c for c in names if c not in header]
    if missing:
        raise CsvError(f"missing column(s) {missing}; header is {header}")
    idx = [header.index(c) for c in names]
    parsed = []
    for r, row in enumerate(rows, start=1):
        cells = []
        for name, i in zip(names, idx):
            if i >= len(row):
                raise CsvError(f"row {r}: no value for column {name!r}")
            try:
                cells.append(parse_decimal(row[i]))
            except ParseError as exc:
                raise CsvError(f"row {r}, column {name!r}: {exc}") from None
        parsed.append(cells)
    if isinstance(columns, str):
        return DataVector.of(c[0] for c in parsed)
    try:
        return [EarthquakeRecord(ml, amp) for ml, amp in parsed]
    except ValueError as exc:
        raise CsvError(str(exc)) from None


def bundled_earthquakes_path():
    return resources.files("qequiv").joinpath("data/earthquakes.csv")


def load_earthquakes(source: Source | None = None) -> list[EarthquakeRecord]:
    if source is None:
        with resources.as_file(bundled_earthquakes_path()) as path:
            return read_csv(path, ("M_L", "A"))
    return read_csv(source, ("M_L", "A"))
