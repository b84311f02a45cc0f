"""Real-valued helpers: Gamma(n/2 + 1) and the decimal renderings used in reports."""
from __future__ import annotations

from decimal import ROUND_DOWN, ROUND_HALF_UP, Context, Decimal, localcontext
from fractions import Fraction

import mpmath

__all__ = [
    "PRECISION",
    "gamma_half_factorial",
    "gamma_ratio",
    "truncate",
    "decimal_string",
    "one_decimal",
    "percent_15g",
]

PRECISION = 50  # decimal digits carried for odd-n Gamma values

def gamma_half_factorial(n: int) -> mpmath.mpf:
    """(n/2)! read as Gamma(n/2 + 1); integer-valued (and exact) for even n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    with mpmath.workdps(PRECISION):
        if n % 2 == 0:
            return mpmath.mpf(mpmath.factorial(n // 2))
        return mpmath.gamma(mpmath.mpf(n) / 2 + 1)


def gamma_ratio(count: int, n: int) -> mpmath.mpf:
    """count / Gamma(n/2 + 1) at full working precision."""
    with mpmath.workdps(PRECISION):
        return mpmath.mpf(count) / gamma_half_factorial(n)


def truncate(value, places: int) -> str:
    """Cut (not round) to ``places`` decimals."""
    q = Decimal(1).scaleb(-places)
    with localcontext(Context(prec=PRECISION + 20)):
        return format(_to_decimal(value).quantize(q, rounding=ROUND_DOWN), "f")


def _to_decimal(value) -> Decimal:
    if isinstance(value, Fraction):
        with localcontext(Context(prec=PRECISION + 20)):
            return Decimal(value.numerator) / Decimal(value.denominator)
    if isinstance(value, (int, str)):
        return Decimal(value)
    with mpmath.workdps(PRECISION):
        return Decimal(mpmath.nstr(value, PRECISION, strip_zeros=False, min_fixed=-1, max_fixed=60))


def decimal_string(value, digits: int) -> str:
    """``value`` rounded to ``digits`` significant digits, fixed notation."""
    with localcontext(Context(prec=PRECISION + 20)):
        d = _to_decimal(value)
        if d == 0:
            return "0"
        exp = d.adjusted() - digits + 1
        q = d.quantize(Decimal(1).scaleb(exp), rounding=ROUND_HALF_UP)
        return format(q, "f")


def one_decimal(value) -> str:
    """One decimal place, half-up: the style of the half-factorial column."""
    return format(_to_decimal(value).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP), "f")


def percent_15g(prob: Fraction) -> str:
    """Probability as a percentage with 15 significant digits, padded to 14 decimals.

    This reproduces how the confidence column is printed in the published table
    (e.g. 1 - 1/6048 -> ``99.98346560846560``).
    """
    with_15 = decimal_string(prob * 100, 15)
    head, _, tail = with_15.partition(".")
    return f"{head}.{tail.ljust(14, '0')}" if len(tail) <= 14 else with_15
