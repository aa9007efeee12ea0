"""Stern-Brocot mediant machinery and continued fractions for rationals."""

import csv
from dataclasses import dataclass
from fractions import Fraction

from .errors import LevelTooLarge, OutOfRange

MAX_LEVEL = 25  # memory guard: level 25 already holds 2^24 + 1 points


@dataclass
class MinkowskiSequence:
    """Level-N mediant point set: 2^(N-1) + 1 sorted rationals in [0, 1].

    Consecutive points a/b < a'/b' are Farey neighbors (a'b - ab' = 1).
    """

    level: int
    points: list

    def __len__(self):
        return len(self.points)


def mediant(x, y):
    """Mediant (num_x + num_y) / (den_x + den_y) of two fractions.

    For Farey neighbors the raw mediant is already in lowest terms;
    Fraction canonicalizes regardless.
    """
    return Fraction(x.numerator + y.numerator, x.denominator + y.denominator)


def minkowski_sequence(N):
    """Build the level-N mediant sequence starting from {0/1, 1/1}.

    Each level inserts the mediant between every consecutive pair of the
    previous level.  New points interleave positionally, so the list stays
    sorted without any sorting pass.
    """
    if not 1 <= N <= MAX_LEVEL:
        raise LevelTooLarge(f"level must be between 1 and {MAX_LEVEL}, got {N}")
    points = [Fraction(0), Fraction(1)]
    for _ in range(N - 1):
        merged = [None] * (2 * len(points) - 1)
        merged[::2] = points
        merged[1::2] = [mediant(a, b) for a, b in zip(points, points[1:])]
        points = merged
    return MinkowskiSequence(N, points)


def continued_fraction(r):
    """Partial quotients [a1, ..., an] of a rational in (0, 1).

    Computed by the Euclidean algorithm, which yields the canonical form
    (final quotient >= 2 whenever the expansion has length >= 2).
    """
    if not 0 < r < 1:
        raise OutOfRange(f"continued_fraction needs 0 < r < 1, got {r}")
    p, q = r.numerator, r.denominator
    quotients = []
    while p:
        a, rem = divmod(q, p)
        quotients.append(a)
        p, q = rem, p
    return quotients


def from_continued_fraction(quotients):
    """Rational value of 1/(a1 + 1/(a2 + ...)) for positive integer quotients."""
    if not quotients:
        raise OutOfRange("empty quotient list")
    x = Fraction(0)
    for a in reversed(quotients):
        if a < 1:
            raise OutOfRange(f"partial quotients must be positive, got {a}")
        x = Fraction(1, a + x)
    return x


def write_sequence_csv(seq, fileobj):
    """Write a MinkowskiSequence as CSV rows (index, numerator, denominator)."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["index", "numerator", "denominator"])
    for i, p in enumerate(seq.points):
        writer.writerow([i, p.numerator, p.denominator])
