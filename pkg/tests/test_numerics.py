import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from minkq.errors import DimensionMismatch, NonPositiveOffdiagonal, SingularMatrix
from minkq.numerics import (
    PrecisionContext,
    cond_inf,
    from_decimal_string,
    mat_vec,
    solve_dense,
    to_decimal_string,
    tridiag_eigenvalues,
)

CTX = PrecisionContext(50)


def exact_solve(A, b):
    """Oracle: Gauss-Jordan elimination in exact rational arithmetic."""
    n = len(A)
    aug = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for i in range(n):
        p = next(j for j in range(i, n) if aug[j][i] != 0)
        aug[i], aug[p] = aug[p], aug[i]
        for j in range(n):
            if j != i and aug[j][i]:
                f = aug[j][i] / aug[i][i]
                aug[j] = [x - f * y for x, y in zip(aug[j], aug[i])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def test_context_rejects_too_few_digits():
    with pytest.raises(ValueError):
        PrecisionContext(9)


def test_solve_identity():
    x = solve_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 2, 3], CTX)
    assert x == [1, 2, 3]


def test_solve_diagonal():
    x = solve_dense([[2, 0], [0, 4]], [2, 2], CTX)
    assert x == [1, mpf("0.5")]


def test_solve_hilbert_against_exact_oracle():
    n = 3
    H = [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)]
    rhs = [sum(row, Fraction(0)) for row in H]
    expect = exact_solve(H, rhs)
    assert expect == [1, 1, 1]
    x = solve_dense(H, rhs, CTX)
    with CTX.working():
        assert all(abs(xi - CTX.from_fraction(e)) < mpf("1e-45") for xi, e in zip(x, expect))


@pytest.mark.parametrize("n", [5, 20, 50])
def test_solve_recovers_random_solution(n):
    rng = random.Random(1000 + n)
    with CTX.working():
        A = [[mpf(rng.uniform(-1, 1)) for _ in range(n)] for _ in range(n)]
        x0 = [mpf(rng.choice([-1, 1]) * rng.uniform(0.5, 1.5)) for _ in range(n)]
        rhs = mat_vec(A, x0, CTX)
        x = solve_dense(A, rhs, CTX)
        # digits - 15 significant digits on components bounded away from zero
        tol = mpf(10) ** (-(CTX.digits - 15))
        assert all(abs(a - b) <= tol * abs(b) for a, b in zip(x, x0))


def test_solve_singular_raises():
    with pytest.raises(SingularMatrix):
        solve_dense([[1, 1], [1, 1]], [1, 1], CTX)


def test_solve_dimension_checks():
    with pytest.raises(DimensionMismatch):
        solve_dense([[1, 0], [0, 1]], [1, 2, 3], CTX)
    with pytest.raises(DimensionMismatch):
        solve_dense([[1, 0], [0]], [1, 2], CTX)


def test_cond_identity_is_one():
    assert cond_inf([[1, 0, 0, 0, 0]] + [[0] * i + [1] + [0] * (4 - i) for i in range(1, 5)], CTX) == 1


def test_cond_diagonal_ratio():
    assert cond_inf([[1, 0], [0, 10]], CTX) == 10


def test_cond_scale_invariant_and_bounded_below():
    rng = random.Random(7)
    with CTX.working():
        A = [[mpf(rng.uniform(-1, 1)) for _ in range(6)] for _ in range(6)]
        c1 = cond_inf(A, CTX)
        c3 = cond_inf([[3 * v for v in row] for row in A], CTX)
        assert c1 >= 1
        assert abs(c3 - c1) <= c1 * mpf("1e-40")


def test_cond_singular_raises():
    with pytest.raises(SingularMatrix):
        cond_inf([[1, 2], [2, 4]], CTX)


def test_tridiag_one_by_one():
    assert tridiag_eigenvalues([mpf("0.5")], [], CTX) == [mpf("0.5")]


def test_tridiag_two_by_two():
    lo, hi = tridiag_eigenvalues([0, 0], [1], CTX)
    with CTX.working():
        assert abs(lo + 1) < mpf("1e-39")
        assert abs(hi - 1) < mpf("1e-39")


def test_tridiag_uniform_measure_jacobi():
    # roots of the monic degree-2 polynomial orthogonal to the uniform
    # measure on [0, 1]: 1/2 +- 1/(2 sqrt 3)
    with CTX.working():
        half = mpf(1) / 2
        off = mpmath.sqrt(mpf(1) / 12)
        lo, hi = tridiag_eigenvalues([half, half], [off], CTX)
        expect_lo = half - 1 / (2 * mpmath.sqrt(3))
        expect_hi = half + 1 / (2 * mpmath.sqrt(3))
        assert abs(lo - expect_lo) < mpf("1e-39")
        assert abs(hi - expect_hi) < mpf("1e-39")


def test_tridiag_strictly_increasing():
    rng = random.Random(11)
    with CTX.working():
        diag = [mpf(rng.uniform(0, 1)) for _ in range(12)]
        off = [mpf(rng.uniform(0.05, 0.3)) for _ in range(11)]
        eigs = tridiag_eigenvalues(diag, off, CTX)
        assert all(a < b for a, b in zip(eigs, eigs[1:]))


def test_tridiag_rejects_nonpositive_offdiag():
    with pytest.raises(NonPositiveOffdiagonal):
        tridiag_eigenvalues([0, 0], [0], CTX)
    with pytest.raises(NonPositiveOffdiagonal):
        tridiag_eigenvalues([0, 0], [-1], CTX)
    with pytest.raises(DimensionMismatch):
        tridiag_eigenvalues([0, 0], [1, 1], CTX)


def test_operations_are_bitwise_deterministic():
    rng = random.Random(3)
    with CTX.working():
        A = [[mpf(rng.uniform(-1, 1)) for _ in range(8)] for _ in range(8)]
        rhs = [mpf(rng.uniform(-1, 1)) for _ in range(8)]
    first = [to_decimal_string(v) for v in solve_dense(A, rhs, CTX)]
    second = [to_decimal_string(v) for v in solve_dense(A, rhs, CTX)]
    assert first == second
    e1 = [to_decimal_string(v) for v in tridiag_eigenvalues([0, 1, 2], [1, 1], CTX)]
    e2 = [to_decimal_string(v) for v in tridiag_eigenvalues([0, 1, 2], [1, 1], CTX)]
    assert e1 == e2


def test_serialization_round_trip_is_exact():
    rng = random.Random(5)
    cases = []
    for digits in (30, 120, 400):
        ctx = PrecisionContext(digits)
        with ctx.working():
            cases.extend(
                (ctx, v)
                for v in [
                    mpf(rng.uniform(-1, 1)) / 7,
                    mpf(rng.getrandbits(200)) / (mpf(3) ** 40),
                    mpf(0),
                    mpf(1),
                    mpf("-0.5"),
                    mpf("1e-25"),
                ]
            )
    for ctx, v in cases:
        assert from_decimal_string(to_decimal_string(v), ctx) == v


def test_serialization_is_scientific_notation():
    with CTX.working():
        assert to_decimal_string(mpf("-0.25")) == "-2.5e-1"
        assert "e" in to_decimal_string(mpf(1) / 3)
