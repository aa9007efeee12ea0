"""Mediant sequences and the empirical measure.

Level N of the mediant construction holds 2^(N-1) + 1 rationals; each new
level inserts the mediant between every consecutive Farey pair.  The uniform
measure on level N converges to the question mark distribution with
sup-distance exactly 1/(2^(N-1) + 1).
"""

from fractions import Fraction

from minkq import continued_fraction, empirical_measure, minkowski_sequence, sup_distance

# ---------------------------------------------------------------------------
print("levels 1..4:")
for N in range(1, 5):
    pts = minkowski_sequence(N).points
    print(f"  level {N}: {[str(p) for p in pts]}")

# consecutive points are Farey neighbors: a'b - ab' = 1
pts = minkowski_sequence(6).points
det_ok = all(
    b.numerator * a.denominator - a.numerator * b.denominator == 1
    for a, b in zip(pts, pts[1:])
)
print(f"\nlevel 6 Farey-neighbor determinants all 1: {det_ok}")

# the continued fraction of every interior point has quotient sum <= level
depth_ok = all(sum(continued_fraction(p)) <= 6 for p in pts[1:-1])
print(f"level 6 quotient sums bounded by the level: {depth_ok}")

# ---------------------------------------------------------------------------
# The empirical measure puts equal weight on every node.
mu = empirical_measure(8)
print(f"\nlevel-8 empirical measure: {len(mu)} nodes, each weight {mu.weights[0]}")
print(f"total mass: {sum(mu.weights)}")

# its distance to the limit distribution follows the closed form exactly
print("\nsup-distance to the limit distribution:")
for N in range(2, 11, 2):
    d = sup_distance(N)
    print(f"  N={N:>2}: {d}  (= 1/(2^{N-1}+1): {d == Fraction(1, 2 ** (N - 1) + 1)})")
