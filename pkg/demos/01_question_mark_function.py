"""Evaluating the question mark function.

The function q maps [0, 1] onto [0, 1], sending each rational to a dyadic
rational through its continued-fraction expansion.  It is continuous,
strictly increasing, and singular: q' = 0 almost everywhere.  This script
walks through the three ways the package evaluates it.
"""

from fractions import Fraction

from minkq import PrecisionContext, ifs_evaluate, q_gap, q_rational, q_real, to_decimal_string

# ---------------------------------------------------------------------------
# Exact values on rationals.  The value of a mediant is the average of the
# values at its Stern-Brocot parents, which is how the function was first
# tabulated.
print("exact values:")
for r in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 7)):
    v = q_rational(r)
    print(f"  q({r}) = {v}")

parents = (Fraction(1, 3), Fraction(1, 2))
child = Fraction(2, 5)
lhs = q_rational(child)
rhs = (q_rational(parents[0]) + q_rational(parents[1])) / 2
print(f"mediant rule: q(2/5) = (q(1/3) + q(1/2))/2 -> {lhs} == {rhs}: {lhs == rhs}")

# symmetry about 1/2 holds exactly
r = Fraction(5, 13)
print(f"symmetry: q(5/13) + q(8/13) = {q_rational(r) + q_rational(1 - r)}")

# ---------------------------------------------------------------------------
# Interval measures.  The measure of [0, 1/n] collapses like 2^(1-n), which
# is why the support behaves like a set with gaps.
print("\ninterval measures q([0, 1/n]):")
for n in (2, 5, 10, 20):
    print(f"  n={n:>2}: {q_gap(Fraction(0), Fraction(1, n))}")

# ---------------------------------------------------------------------------
# The self-similar iteration: starting from the uniform distribution, each
# sweep halves the error, and rational orbits stabilize exactly.
print("\niterates of the self-similar map at x = 1/3:")
for depth in range(5):
    print(f"  depth {depth}: {ifs_evaluate(Fraction(1, 3), depth)}")

# ---------------------------------------------------------------------------
# Big-float evaluation expands the input (an exact dyadic rational) into
# partial quotients until the series tail drops below the context resolution.
ctx = PrecisionContext(60)
with ctx.working():
    from mpmath import mpf

    x = mpf(2) ** -5  # 1/32
    print("\nbig-float path:")
    print(f"  q(1/32) = {to_decimal_string(q_real(x, ctx))}")
    print(f"  exact   = {q_rational(Fraction(1, 32))}")
    y = ctx.from_fraction(Fraction(1, 3))
    print(f"  q(~1/3) = {to_decimal_string(q_real(y, ctx))}")
