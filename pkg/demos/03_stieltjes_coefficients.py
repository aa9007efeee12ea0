"""Recurrence coefficients from the empirical measure.

The discretized Stieltjes procedure orthogonalizes the monomials against
the level-N empirical measure.  Symmetry pins b_k = 1/2 automatically; the
squared coefficients a_k^2 hover around 0.04..0.06 with one conspicuous
spike near the beginning whose size and position drift with N.
"""

import time

import mpmath

from minkq import PrecisionContext, empirical_measure, jacobi_zeros, stieltjes

ctx = PrecisionContext(100)

# ---------------------------------------------------------------------------
N = 10
t0 = time.time()
mu = empirical_measure(N)
rc = stieltjes(mu, 100, ctx)
print(f"level {N}: {len(mu)} nodes, first 100 coefficients in {time.time() - t0:.1f}s")

with ctx.working():
    print(f"b_0..b_3 (all 1/2 by symmetry): {[mpmath.nstr(b, 10) for b in rc.b[:4]]}")
    peak = max(range(len(rc.a2)), key=lambda i: rc.a2[i])
    print(f"largest squared coefficient: a2_{peak + 1} = {mpmath.nstr(rc.a2[peak], 12)}")
    print("first ten squared coefficients:")
    for k in range(1, 11):
        print(f"  a2_{k:<2} = {mpmath.nstr(rc.a2[k - 1], 12)}")

# ---------------------------------------------------------------------------
# The peak moves as the level grows (compare a few small levels).
print("\npeak position by level:")
for level in (8, 9, 10):
    coeffs = stieltjes(empirical_measure(level), 50, ctx)
    with ctx.working():
        peak = max(range(len(coeffs.a2)), key=lambda i: coeffs.a2[i])
        print(f"  level {level:>2}: peak at k={peak + 1}, value {mpmath.nstr(coeffs.a2[peak], 10)}")

# ---------------------------------------------------------------------------
# Zeros of the orthogonal polynomials are eigenvalues of the Jacobi matrix;
# they interlace and stay inside (0, 1).
with ctx.working():
    z5 = jacobi_zeros(rc, 5, ctx)
    print("\nzeros of the degree-5 polynomial:")
    for z in z5:
        print(f"  {mpmath.nstr(z, 20)}")
