"""Exact comparisons involving Euler's number.

e is irrational, so e*x == y only when x == y == 0.  Every comparison below
refines a rational enclosure of e until it is decisive.
"""
from fractions import Fraction
from math import floor


def e_bounds(terms):
    """Rational lo < e < hi from the first ``terms`` factorial terms."""
    lo = Fraction(0)
    term = Fraction(1)
    for k in range(terms):
        if k:
            term /= k
        lo += term
    # tail sum_{k>=n} 1/k! < 2/n! for n >= 1
    hi = lo + 2 * term / terms
    return lo, hi


def _enclose(x):
    terms = 12
    while True:
        lo, hi = e_bounds(terms)
        yield lo * x, hi * x
        terms *= 2


def ceil_e_times(x):
    """Exact ceiling of e*x for rational x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 0
    for lo, hi in _enclose(x):
        if floor(lo) == floor(hi):
            return floor(lo) + 1


def e_times_lt(x, y):
    """Decide e*x < y exactly for rationals x >= 0, y."""
    x, y = Fraction(x), Fraction(y)
    if x == 0:
        return 0 < y
    for lo, hi in _enclose(x):
        if hi < y:
            return True
        if lo >= y:
            return False


def e_interval(x, terms=40):
    """A tight rational enclosure (lo, hi) of e*x for x >= 0."""
    lo, hi = e_bounds(terms)
    x = Fraction(x)
    return lo * x, hi * x


def e_lt_ratio(num: int, den: int) -> bool:
    """Decide e < num/den for integers num >= 0, den > 0 without forming the fraction."""
    terms = 12
    while True:
        lo, hi = e_bounds(terms)
        if hi.numerator * den < num * hi.denominator:
            return True
        if lo.numerator * den >= num * lo.denominator:
            return False
        terms *= 2
