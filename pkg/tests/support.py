"""Small helpers shared by the test modules."""

from fractions import Fraction

from mpmath import mp, mpf


def printed_ulp(text):
    """One unit in the last printed decimal place, as an exact Fraction."""
    frac_digits = len(text.split(".")[1])
    return Fraction(1, 10**frac_digits)


def within_printed_ulp(value, text, slack=1):
    """|value - text| <= slack units in the last printed place.

    Comparison runs at a precision comfortably above the printed length.
    """
    ulp = printed_ulp(text)
    with mp.workdps(len(text) + 30):
        return abs(value - mpf(text)) <= mpf(slack) / ulp.denominator
