import io
from fractions import Fraction

import pytest
from mpmath import mpf

from minkq.errors import LevelTooLarge
from minkq.measure import (
    DiscreteMeasure,
    discrete_moments,
    empirical_measure,
    integrate,
    read_measure_csv,
    sup_distance,
    write_measure_csv,
)
from minkq.numerics import PrecisionContext

from reference_values import MOMENTS

CTX = PrecisionContext(60)


def F(n, d=1):
    return Fraction(n, d)


def test_level_two_by_definition():
    mu = empirical_measure(2)
    assert mu.nodes == [F(0), F(1, 2), F(1)]
    assert mu.weights == [F(1, 3)] * 3


def test_level_ten_node_count():
    assert len(empirical_measure(10)) == 513


@pytest.mark.parametrize("N", range(1, 13))
def test_total_mass_exact(N):
    mu = empirical_measure(N)
    assert sum(mu.weights) == 1


def test_level_guard():
    with pytest.raises(LevelTooLarge):
        empirical_measure(0)
    with pytest.raises(LevelTooLarge):
        empirical_measure(21)


def test_measure_validation():
    with pytest.raises(ValueError):
        DiscreteMeasure([F(0), F(1)], [F(1, 2)])
    with pytest.raises(ValueError):
        DiscreteMeasure([F(0), F(1)], [F(5, 4), F(-1, 4)])
    with pytest.raises(ValueError):
        DiscreteMeasure([F(1), F(0)], [F(1, 2), F(1, 2)])
    with pytest.raises(ValueError):
        DiscreteMeasure([F(0), F(1)], [F(1, 2), F(1, 3)])


def test_first_moment_is_exactly_half():
    for N in range(2, 9):
        m = discrete_moments(empirical_measure(N), 1, CTX)
        assert m.values[0] == 1
        assert m.values[1] == mpf("0.5")


def test_second_moment_level_two():
    m = discrete_moments(empirical_measure(2), 2, CTX)
    assert m.values[2] == CTX.from_fraction(F(5, 12))


def test_moments_nonincreasing():
    m = discrete_moments(empirical_measure(6), 30, CTX)
    assert all(b <= a for a, b in zip(m.values, m.values[1:]))


def test_second_moment_converges_to_reference():
    with CTX.working():
        ref = mpf(MOMENTS[2])
        errs = [
            abs(discrete_moments(empirical_measure(N), 2, CTX).values[2] - ref)
            for N in range(6, 13)
        ]
        assert all(b < a for a, b in zip(errs, errs[1:]))


def test_integrate_matches_moments():
    mu = empirical_measure(4)
    m = discrete_moments(mu, 2, CTX)
    with CTX.working():
        val = integrate(mu, lambda x: x * x, CTX)
        assert abs(val - m.values[2]) < mpf("1e-55")


def test_sup_distance_values():
    assert sup_distance(2) == F(1, 3)
    assert sup_distance(5) == F(1, 17)


@pytest.mark.parametrize("N", range(1, 13))
def test_sup_distance_closed_form(N):
    assert sup_distance(N) == F(1, 2 ** (N - 1) + 1)


def test_sup_distance_ratio_halves():
    # successive ratios (2^(N-1)+1)/(2^N+1) approach 1/2 from above
    ratios = [F(2 ** (N - 1) + 1, 2**N + 1) for N in range(2, 12)]
    assert all(F(1, 2) < b < a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] - F(1, 2) < F(1, 1000)


def test_sup_distance_guard():
    with pytest.raises(LevelTooLarge):
        sup_distance(15)


def test_measure_csv_round_trip():
    mu = empirical_measure(4)
    buf = io.StringIO()
    write_measure_csv(mu, buf)
    back = read_measure_csv(io.StringIO(buf.getvalue()))
    assert back.nodes == mu.nodes
    assert back.weights == mu.weights
