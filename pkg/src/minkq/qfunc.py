"""Evaluation of Minkowski's question mark function.

On rationals the function takes exact dyadic values (denominator a power of
two) obtained from the finite continued-fraction expansion; on big-float
inputs it is evaluated through the exact dyadic expansion of the input with
a rigorous truncation rule; the two-branch self-similar recursion is also
provided for iterated approximation from the uniform base distribution.
"""

import math
from fractions import Fraction

import mpmath
from mpmath import mp, mpf
from mpmath.libmp import to_rational

from .errors import EmptyInterval, OutOfRange
from .farey import continued_fraction

MAX_IFS_DEPTH = 64


def dyadic_from_quotients(quotients):
    """Exact alternating dyadic sum 2 * sum_k (-1)^(k+1) 2^(-(a1+...+ak)).

    The value is independent of which of the two equivalent quotient
    representations ([..., an] vs [..., an - 1, 1]) is supplied.
    """
    total = Fraction(0)
    s = 0
    sign = 1
    for a in quotients:
        s += a
        total += Fraction(sign, 1 << (s - 1))
        sign = -sign
    return total


def q_rational(r):
    """Exact value of the question mark function at a rational in [0, 1].

    Returns a Fraction whose denominator is a power of two.
    """
    if not 0 <= r <= 1:
        raise OutOfRange(f"q is defined on [0, 1], got {r}")
    if r == 0:
        return Fraction(0)
    if r == 1:
        return Fraction(1)
    return dyadic_from_quotients(continued_fraction(r))


def q_real(x, ctx):
    """Question mark function at a big-float point in [0, 1].

    The input is interpreted exactly (a float is a dyadic rational), its
    quotients are expanded until their accumulated sum S crosses
    digits*log2(10) + 10, and the partial dyadic series is summed with the
    guaranteed truncation error below 2^(1-S), i.e. under the context's
    resolution.
    """
    with ctx.working():
        x = +mpf(x)
        if not 0 <= x <= 1:
            raise OutOfRange(f"q is defined on [0, 1], got {mpmath.nstr(x, 8)}")
        if x == 0:
            return mpf(0)
        if x == 1:
            return mpf(1)
        budget = int(ctx.digits * math.log2(10)) + 10
        p, q = to_rational(x._mpf_)
        acc = mpf(0)
        s = 0
        sign = 1
        with mp.extradps(15):
            while p and s <= budget:
                a, rem = divmod(q, p)
                s += a
                acc += sign * mpmath.ldexp(1, 1 - s)
                sign = -sign
                p, q = rem, p
        return +acc


def ifs_evaluate(x, depth):
    """Iterate of the two-branch self-similar map applied to q0(t) = t.

    Exact rational arithmetic throughout; the iterates converge uniformly
    to the question mark function at rate 2^(-depth).
    """
    if not 0 <= x <= 1:
        raise OutOfRange(f"q is defined on [0, 1], got {x}")
    if not 0 <= depth <= MAX_IFS_DEPTH:
        raise OutOfRange(f"depth must be between 0 and {MAX_IFS_DEPTH}, got {depth}")
    if depth == 0:
        return Fraction(x)
    if x <= Fraction(1, 2):
        return ifs_evaluate(x / (1 - x), depth - 1) / 2
    return 1 - ifs_evaluate((1 - x) / x, depth - 1) / 2


def q_gap(a, b):
    """Exact measure q(b) - q(a) of the interval [a, b]."""
    if a >= b:
        raise EmptyInterval(f"need a < b, got a={a}, b={b}")
    return q_rational(b) - q_rational(a)
