"""Moments of the measure and the Chebyshev route to the coefficients.

The moments solve a truncated infinite linear system (two variants: an
alternating ill-conditioned one that is very accurate, and an all-positive
well-conditioned one with larger truncation error).  Feeding the moments to
the Chebyshev algorithm recovers the recurrence coefficients, but the map
is exponentially ill-conditioned, so high precision buys only an initial
trusted stretch of coefficients, certified by the exact symmetry b_k = 1/2.

This demo runs a small configuration in a few seconds; the full-scale
reproduction (K=500 at 400 digits) lives in the acceptance suite and the
command line (`minkq moments`).
"""

import time

import mpmath
from mpmath import mpf

from minkq import (
    PrecisionContext,
    chebyshev,
    discrete_moments,
    empirical_measure,
    geometric_means,
    nevai_diagnostics,
    solve_moments,
    stieltjes,
    validate_moments,
)

# ---------------------------------------------------------------------------
ctx = PrecisionContext(120)
t0 = time.time()
mv = solve_moments("A", K=120, terms=150, ctx=ctx)
with ctx.working():
    gauge = abs(mv.values[1] - mpf(1) / 2)
print(f"moment system: K=120 at 120 digits in {time.time() - t0:.1f}s")
print(f"accuracy gauge |m_1 - 1/2| = {mpmath.nstr(gauge, 4)}")

report = validate_moments(mv, ctx, m1_tol="1e-20")
print(f"validation: monotone={report['monotone_nonincreasing']}, "
      f"hankel_positive={report['hankel_positive']}, passed={report['passed']}")

# ---------------------------------------------------------------------------
# Chebyshev: moments -> coefficients.  The trusted prefix is where the
# computed b_k stop agreeing with 1/2.
rc = chebyshev(mv, 30, ctx)
print(f"\nchebyshev run: trusted prefix {rc.trusted_prefix} of {len(rc.b)} coefficients")
with ctx.working():
    for k in range(1, 7):
        print(f"  a2_{k} = {mpmath.nstr(rc.a2[k - 1], 20)}")

# ---------------------------------------------------------------------------
# Cross-method check: on a discrete measure both routes must agree.
mu = empirical_measure(7)
rc_s = stieltjes(mu, 8, ctx)
rc_c = chebyshev(discrete_moments(mu, 16, ctx), 8, ctx)
with ctx.working():
    worst = max(abs(a - b) for a, b in zip(rc_s.a2, rc_c.a2))
print(f"\ncross-method agreement on the level-7 measure: worst diff {mpmath.nstr(worst, 3)}")

# ---------------------------------------------------------------------------
# Diagnostics for the limit questions: are the coefficients converging
# (they do not appear to), and does the geometric mean approach 1/16
# (it sits near 0.052 instead)?  Reported, never asserted.
diag = nevai_diagnostics(rc)
gm = geometric_means(rc)
with ctx.working():
    print("\ndiagnostics over the trusted prefix:")
    print(f"  arithmetic mean of a2: {mpmath.nstr(diag['a2_mean'], 10)}")
    print(f"  min/max: {mpmath.nstr(diag['a2_min'], 8)} / {mpmath.nstr(diag['a2_max'], 8)}")
    print(f"  final geometric mean:  {mpmath.nstr(gm[-1], 10)}")
    print(f"  reference constants:   1/16 = {mpmath.nstr(diag['reference_capacity_squared'], 8)}"
          f", capacity 1/4")
