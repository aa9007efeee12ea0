"""Arbitrary-precision numeric substrate.

Big floating-point values ("BigReal") are mpmath ``mpf`` numbers; every
operation in this package runs under an explicit :class:`PrecisionContext`
that pins the number of decimal digits, so identical inputs and an identical
context reproduce bitwise-identical results.  Exact rationals are stdlib
``fractions.Fraction``, which already enforces the canonical form
(gcd(num, den) = 1, den > 0).
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf
from mpmath.libmp import from_float, from_int, from_rational, repr_dps, round_nearest, to_str

from .errors import DimensionMismatch, NonPositiveOffdiagonal, SingularMatrix

BigReal = mpmath.mpf
Rational = Fraction

# Default working precisions for the two computation routes.
STIELTJES_DIGITS = 100
MOMENTS_DIGITS = 400


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in decimal digits, with round-to-nearest semantics.

    mpmath rounds every arithmetic result to the precision that is active
    when the operation executes, so all public entry points wrap their work
    in ``with ctx.working():``.
    """

    digits: int = STIELTJES_DIGITS

    def __post_init__(self):
        if self.digits < 10:
            raise ValueError("precision context needs at least 10 digits")

    def working(self):
        """Context manager activating this precision."""
        return mp.workdps(self.digits)

    @property
    def prec(self):
        """Binary precision (bits) mpmath uses for this many digits."""
        with self.working():
            return mp.prec

    def to_mpf(self, x):
        """Convert x (int, float, str, Fraction, mpf) to a BigReal at this precision.

        Fractions are converted with a single correct rounding.
        """
        with self.working():
            if isinstance(x, Fraction):
                return self.from_fraction(x)
            return +mpf(x)

    def from_fraction(self, fr):
        """Correctly rounded BigReal value of an exact Fraction."""
        with self.working():
            return mp.make_mpf(
                from_rational(fr.numerator, fr.denominator, mp.prec, round_nearest)
            )

    @property
    def eps(self):
        """10**(-digits) as a BigReal, the nominal resolution of the context."""
        with self.working():
            return mpf(10) ** (-self.digits)


_EXACT_SERIALIZATION_CAP = 20000  # digits; beyond this fall back to mantissa width


def to_decimal_string(x):
    """Serialize a BigReal as a scientific-notation decimal string.

    A binary float is a dyadic rational, so its decimal expansion is finite;
    it is emitted exactly (up to a generous length cap), which makes the
    round trip exact at any parsing precision that can represent the value.
    The value is taken as stored: constructing a new mpf here would silently
    re-round it to whatever precision happens to be active.
    """
    if isinstance(x, bool):
        raise TypeError("boolean is not a BigReal")
    if isinstance(x, int):
        raw = from_int(x, 0)  # prec 0: exact
    elif isinstance(x, float):
        raw = from_float(x)
    elif isinstance(x, mpmath.mpf):
        raw = x._mpf_
    else:
        raise TypeError(f"cannot serialize {type(x).__name__} as a BigReal")
    sign, man, exp, bc = raw
    if man == 0 and exp == 0:
        return "-0.0" if sign else "0.0"
    # exact expansion length: bc + exp digits of integer part (base 10),
    # plus 0.7 |exp| fractional digits when exp < 0
    needed = int(0.30103 * (bc + max(exp, 0)) + 0.69898 * max(-exp, 0)) + 3
    dps = needed if needed <= _EXACT_SERIALIZATION_CAP else repr_dps(max(bc, 10))
    return to_str(raw, dps, min_fixed=1, max_fixed=0)


def from_decimal_string(s, ctx):
    """Parse a decimal string produced by :func:`to_decimal_string`."""
    with ctx.working():
        return +mpf(s)


def mat_vec(A, x, ctx):
    """Matrix-vector product with left-to-right accumulation per row."""
    with ctx.working():
        out = []
        for row in A:
            acc = mpf(0)
            for a, v in zip(row, x):
                acc += a * v
            out.append(acc)
        return out


def _as_rows(A, ctx):
    """Copy A into fresh lists of mpf rows, validating squareness."""
    n = len(A)
    rows = []
    for row in A:
        if len(row) != n:
            raise DimensionMismatch(f"matrix is not square: row of length {len(row)}, expected {n}")
        rows.append([ctx.to_mpf(v) for v in row])
    return rows


def _lu_factor(rows, ctx):
    """In-place LU with partial pivoting; returns the row permutation.

    The pivot search takes the first row attaining the maximum magnitude,
    so ties break to the lowest row index.  A pivot below 10**(-digits+5)
    is treated as zero.
    """
    n = len(rows)
    perm = list(range(n))
    floor = mpf(10) ** (-ctx.digits + 5)
    for i in range(n):
        best = i
        best_mag = abs(rows[i][i])
        for j in range(i + 1, n):
            mag = abs(rows[j][i])
            if mag > best_mag:
                best, best_mag = j, mag
        if best_mag < floor:
            raise SingularMatrix(f"pivot magnitude {to_decimal_string(best_mag)} below threshold at column {i}")
        if best != i:
            rows[i], rows[best] = rows[best], rows[i]
            perm[i], perm[best] = perm[best], perm[i]
        piv = rows[i][i]
        row_i = rows[i]
        tail = row_i[i + 1:]
        for j in range(i + 1, n):
            row_j = rows[j]
            f = row_j[i] / piv
            row_j[i] = f
            if f:
                row_j[i + 1:] = [x - f * y for x, y in zip(row_j[i + 1:], tail)]
    return perm


def solve_dense(A, rhs, ctx):
    """Solve A x = rhs by Gaussian elimination with partial pivoting.

    Parameters
    ----------
    A : sequence of n rows of n entries (mpf, int, float or Fraction)
    rhs : sequence of n entries
    ctx : PrecisionContext

    Returns
    -------
    list of BigReal solving the system at working precision.

    Raises
    ------
    SingularMatrix
        If some pivot's magnitude falls below 10**(-digits+5).
    DimensionMismatch
        If A is not square or rhs has the wrong length.
    """
    n = len(A)
    if len(rhs) != n:
        raise DimensionMismatch(f"rhs has length {len(rhs)}, expected {n}")
    with ctx.working():
        rows = _as_rows(A, ctx)
        perm = _lu_factor(rows, ctx)
        b = [ctx.to_mpf(rhs[p]) for p in perm]
        # forward substitution (unit lower triangle stored below the diagonal)
        for i in range(n):
            acc = b[i]
            row_i = rows[i]
            for k in range(i):
                acc -= row_i[k] * b[k]
            b[i] = acc
        # back substitution
        for i in range(n - 1, -1, -1):
            acc = b[i]
            row_i = rows[i]
            for k in range(i + 1, n):
                acc -= row_i[k] * b[k]
            b[i] = acc / row_i[i]
        return b


def _inf_norm(rows):
    best = mpf(0)
    for row in rows:
        acc = mpf(0)
        for v in row:
            acc += abs(v)
        if acc > best:
            best = acc
    return best


def cond_inf(A, ctx):
    """Infinity-norm condition number ||A||_inf * ||A^-1||_inf.

    The inverse is computed explicitly from one LU factorization (the size
    guard keeps the O(n^3) cost bounded), columns of the identity solved
    simultaneously row-by-row so results stay deterministic.
    """
    n = len(A)
    if n > 600:
        raise DimensionMismatch(f"cond_inf computes an explicit inverse; size {n} exceeds 600")
    with ctx.working():
        rows = _as_rows(A, ctx)
        norm_a = _inf_norm(rows)
        perm = _lu_factor(rows, ctx)
        zero = mpf(0)
        one = mpf(1)
        # Solve A X = I.  Y holds rows of L^-1 P, overwritten by rows of X.
        y = []
        for i in range(n):
            acc = [zero] * n
            acc[perm[i]] = one
            row_i = rows[i]
            for k in range(i):
                f = row_i[k]
                if f:
                    yk = y[k]
                    acc = [a - f * v for a, v in zip(acc, yk)]
            y.append(acc)
        for i in range(n - 1, -1, -1):
            acc = y[i]
            row_i = rows[i]
            for k in range(i + 1, n):
                f = row_i[k]
                if f:
                    xk = y[k]
                    acc = [a - f * v for a, v in zip(acc, xk)]
            piv = row_i[i]
            y[i] = [a / piv for a in acc]
        return +(norm_a * _inf_norm(y))


def _sturm_count(diag, off2, x, tiny):
    """Number of eigenvalues strictly below x (LDL^T sign count)."""
    count = 0
    d = diag[0] - x
    if not d:
        d = -tiny
    if d < 0:
        count += 1
    for i in range(1, len(diag)):
        d = (diag[i] - x) - off2[i - 1] / d
        if not d:
            d = -tiny
        if d < 0:
            count += 1
    return count


def tridiag_eigenvalues(diag, offdiag, ctx):
    """Eigenvalues of a symmetric tridiagonal matrix, ascending.

    Parameters
    ----------
    diag : main diagonal entries
    offdiag : off-diagonal entries, all > 0 (forces a simple spectrum)
    ctx : PrecisionContext

    Returns
    -------
    list of BigReal eigenvalues, computed by bisection on Sturm sign
    counts down to interval width 10**(-digits+10).
    """
    n = len(diag)
    if len(offdiag) != max(n - 1, 0):
        raise DimensionMismatch(f"offdiag length {len(offdiag)} does not match diagonal of {n}")
    with ctx.working():
        d = [ctx.to_mpf(v) for v in diag]
        e = [ctx.to_mpf(v) for v in offdiag]
        for v in e:
            if v <= 0:
                raise NonPositiveOffdiagonal(f"off-diagonal entry {to_decimal_string(v)} is not positive")
        if n == 0:
            return []
        if n == 1:
            return [d[0]]
        off2 = [v * v for v in e]
        radius = [e[0]] + [e[i - 1] + e[i] for i in range(1, n - 1)] + [e[n - 2]]
        lo = min(di - r for di, r in zip(d, radius))
        hi = max(di + r for di, r in zip(d, radius))
        tol = mpf(10) ** (-ctx.digits + 10)
        tiny = mpf(10) ** (-3 * ctx.digits)
        eigs = []
        for idx in range(n):
            a, b = lo, hi
            while b - a > tol:
                mid = (a + b) / 2
                if _sturm_count(d, off2, mid, tiny) <= idx:
                    a = mid
                else:
                    b = mid
            eigs.append((a + b) / 2)
        return eigs
