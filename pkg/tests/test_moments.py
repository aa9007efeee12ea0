import math
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from minkq.moments import (
    MomentVector,
    assemble_system,
    c_series,
    d_series,
    hankel_determinants,
    load_moments,
    moments_json_bytes,
    save_moments,
    solve_moments,
    validate_moments,
)
from minkq.numerics import PrecisionContext

from reference_values import MOMENTS

CTX = PrecisionContext(80)


def test_c0_is_exact_geometric_sum():
    ctx = PrecisionContext(150)  # 150 digits carry all 400 bits exactly
    assert c_series(0, 400, ctx) == ctx.from_fraction(1 - Fraction(1, 2**400))


def test_c1_is_log_two():
    ctx = PrecisionContext(60)
    with ctx.working():
        assert abs(c_series(1, 250, ctx) - mpmath.log(2)) < mpf("1e-58")


@pytest.mark.parametrize("k", [0, 5, 50])
def test_c_truncation_bound(k):
    # at k = 0 the doubled-terms difference is exactly the bound 2^-400
    ctx = PrecisionContext(150)
    with ctx.working():
        assert abs(c_series(k, 400, ctx) - c_series(k, 800, ctx)) <= mpf(2) ** (-400)


def test_d_matches_identity_at_small_k():
    ctx = PrecisionContext(60)
    with ctx.working():
        for k in range(7):
            assert abs(d_series(k, 200, ctx) - (2 * c_series(k, 200, ctx) - 1)) < mpf("1e-57")
        assert abs(d_series(1, 200, ctx) - (2 * mpmath.log(2) - 1)) < mpf("1e-57")
        assert abs(d_series(0, 200, ctx) - 1) < mpf("1e-30")


def test_d_positive_for_large_k():
    ctx = PrecisionContext(30)
    for k in range(0, 1001, 100):
        assert d_series(k, 50, ctx) > 0


def test_assemble_variant_a_row_one():
    # hand expansion at K=3: row s=1 is [1 + c2 C(1,1), -c3 C(2,2), +c4 C(3,3)]
    ctx = PrecisionContext(40)
    rows, rhs = assemble_system("A", 3, 60, ctx)
    c = [c_series(j, 60, ctx) for j in range(7)]
    with ctx.working():
        assert rows[0][0] == 1 + c[2]
        assert rows[0][1] == -c[3]
        assert rows[0][2] == c[4]
        assert rhs == [c[1], c[2], c[3]]
        # another diagonal: s=3, k=3 is odd, so 1 + c6 C(5,3)
        assert rows[2][2] == 1 + c[6] * math.comb(5, 3)


def test_assemble_variant_b_structure():
    ctx = PrecisionContext(40)
    K = 4
    rows, rhs = assemble_system("B", K, 60, ctx)
    d = [d_series(j, 60, ctx) for j in range(2 * K + 1)]
    with ctx.working():
        for s in range(1, K + 1):
            for k in range(1, K + 1):
                expect = -d[k + s] * math.comb(k + s - 1, k)
                if k == s:
                    expect = 1 + expect
                assert rows[s - 1][k - 1] == expect
                if k != s:  # all off-diagonal entries negative
                    assert rows[s - 1][k - 1] < 0
        assert rhs == d[1 : K + 1]


def test_assemble_rejects_bad_arguments():
    with pytest.raises(ValueError):
        assemble_system("C", 10, 60, CTX)
    with pytest.raises(ValueError):
        assemble_system("A", 1, 60, CTX)


def test_solve_small_system_properties():
    ctx = PrecisionContext(60)
    mv = solve_moments("A", K=40, terms=60, ctx=ctx)
    assert mv.values[0] == 1
    assert mv.provenance == {"variant": "A", "K": 40, "series_terms": 60, "digits": 60}
    with ctx.working():
        assert abs(mv.values[1] - mpf("0.5")) < mpf("1e-10")
        assert all(b <= a for a, b in zip(mv.values, mv.values[1:]))
        assert all(v > 0 for v in mv.values)


def test_truncation_stability_doubling_k():
    ctx = PrecisionContext(150)
    a = solve_moments("A", K=100, terms=200, ctx=ctx)
    b = solve_moments("A", K=200, terms=200, ctx=ctx)
    with ctx.working():
        for k in range(1, 11):
            assert abs(a.values[k] - b.values[k]) < mpf("1e-15")


def test_validate_reference_moments():
    vals = [mpf(1)] + [CTX.to_mpf(MOMENTS[k]) for k in range(1, 36)]
    mv = MomentVector(values=vals, provenance={"variant": "A", "K": 35, "series_terms": 0, "digits": 80})
    report = validate_moments(mv, CTX, m1_tol="1e-45")
    assert report["passed"]
    assert report["m0_is_one"] and report["monotone_nonincreasing"] and report["hankel_positive"]
    assert report["m1_error"] == 0


def test_validate_rejects_nonmonotone():
    mv = MomentVector(values=[CTX.to_mpf(v) for v in (1, "0.6", "0.7")], provenance={})
    report = validate_moments(mv, CTX, m1_tol="0.2")
    assert not report["monotone_nonincreasing"]
    assert not report["passed"]


def test_validate_uniform_moments():
    vals = [CTX.from_fraction(Fraction(1, k + 1)) for k in range(13)]
    mv = MomentVector(values=vals, provenance={})
    report = validate_moments(mv, CTX, m1_tol="1e-70")
    assert report["passed"]


def test_hankel_positivity_of_solved_moments():
    ctx = PrecisionContext(100)
    mv = solve_moments("A", K=100, terms=150, ctx=ctx)
    dets = hankel_determinants(mv, 6, ctx)
    assert len(dets) == 6
    assert all(d > 0 for d in dets)


def test_moment_file_round_trip(tmp_path):
    ctx = PrecisionContext(60)
    mv = solve_moments("B", K=20, terms=40, ctx=ctx)
    path = tmp_path / "m.json"
    save_moments(mv, path)
    back = load_moments(path)
    assert back.provenance == mv.provenance
    assert back.values == mv.values
    assert moments_json_bytes(back) == path.read_bytes()
