"""Discrete measures: the empirical distribution of a mediant sequence,
its moments, integration against it, and its sup-distance to the limit
distribution.

Nodes and weights are stored exactly as rationals; rounding happens only
when a consumer evaluates something at a chosen precision.
"""

import csv
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mpf

from .errors import LevelTooLarge
from .farey import minkowski_sequence
from .moments import MomentVector
from .qfunc import q_rational

MAX_EMPIRICAL_LEVEL = 20
MAX_SUP_DISTANCE_LEVEL = 14


@dataclass
class DiscreteMeasure:
    """Finite positive measure given by sorted rational nodes and weights.

    Invariants checked on construction: strictly increasing nodes, positive
    weights, total mass exactly 1.
    """

    nodes: list
    weights: list
    metadata: object = "custom"

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ValueError("nodes and weights must have equal length")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if sum(self.weights) != 1:
            raise ValueError("weights must sum to 1 exactly")
        if any(a >= b for a, b in zip(self.nodes, self.nodes[1:])):
            raise ValueError("nodes must be strictly increasing")

    def __len__(self):
        return len(self.nodes)


def empirical_measure(N):
    """Uniform probability measure on the level-N mediant sequence."""
    if not 1 <= N <= MAX_EMPIRICAL_LEVEL:
        raise LevelTooLarge(f"level must be between 1 and {MAX_EMPIRICAL_LEVEL}, got {N}")
    points = minkowski_sequence(N).points
    w = Fraction(1, len(points))
    return DiscreteMeasure(points, [w] * len(points), metadata=N)


def discrete_moments(mu, k_max, ctx):
    """Moments m_0..m_k_max of a discrete measure.

    Each moment is accumulated exactly in rational arithmetic and rounded
    once at the context precision, so symmetric measures yield m_1 = 1/2
    to the last bit.

    Returns a MomentVector with variant "discrete" provenance.
    """
    powers = list(mu.weights)
    values = [ctx.to_mpf(1)]
    for _ in range(k_max):
        powers = [p * x for p, x in zip(powers, mu.nodes)]
        values.append(ctx.from_fraction(sum(powers, Fraction(0))))
    provenance = {
        "variant": "discrete",
        "source": f"level {mu.metadata}" if isinstance(mu.metadata, int) else str(mu.metadata),
        "K": k_max,
        "series_terms": 0,
        "digits": ctx.digits,
    }
    return MomentVector(values=values, provenance=provenance)


def integrate(mu, f, ctx):
    """Integral of a big-float function against the measure.

    Nodes and weights are converted once at the context precision and the
    weighted sum accumulates left to right, keeping results deterministic.
    """
    with ctx.working():
        acc = mpf(0)
        for x, w in zip(mu.nodes, mu.weights):
            acc += ctx.from_fraction(w) * f(ctx.from_fraction(x))
        return +acc


def sup_distance(N):
    """Exact sup-norm distance between the level-N empirical distribution
    and the limit distribution.

    The empirical distribution steps by 1/m at each node, so the supremum
    over [0, 1] is attained at a node from one side or the other; both
    one-sided gaps are examined at every jump.  The result equals
    1/(2^(N-1) + 1).
    """
    if not 1 <= N <= MAX_SUP_DISTANCE_LEVEL:
        raise LevelTooLarge(f"level must be between 1 and {MAX_SUP_DISTANCE_LEVEL}, got {N}")
    points = minkowski_sequence(N).points
    m = len(points)
    best = Fraction(0)
    for j, x in enumerate(points):
        qx = q_rational(x)
        lo = abs(Fraction(j, m) - qx)       # value just left of the jump
        hi = abs(Fraction(j + 1, m) - qx)   # value at and right of the jump
        best = max(best, lo, hi)
    return best


def write_measure_csv(mu, fileobj):
    """Write nodes and weights as CSV (node_num, node_den, weight_num, weight_den)."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["node_num", "node_den", "weight_num", "weight_den"])
    for x, w in zip(mu.nodes, mu.weights):
        writer.writerow([x.numerator, x.denominator, w.numerator, w.denominator])


def read_measure_csv(fileobj, metadata="custom"):
    """Read a measure written by :func:`write_measure_csv`."""
    reader = csv.reader(fileobj)
    header = next(reader)
    if header != ["node_num", "node_den", "weight_num", "weight_den"]:
        raise ValueError(f"unexpected measure CSV header: {header}")
    nodes, weights = [], []
    for row in reader:
        nodes.append(Fraction(int(row[0]), int(row[1])))
        weights.append(Fraction(int(row[2]), int(row[3])))
    return DiscreteMeasure(nodes, weights, metadata=metadata)
