"""Three-term recurrence coefficients for monic orthogonal polynomials.

Two independent routes are implemented: the discretized Stieltjes procedure,
which builds the coefficients from weighted inner products over a discrete
measure, and the Chebyshev algorithm, which maps ordinary moments to
coefficients through a mixed-moment table.  The latter is exponentially
ill-conditioned, so every result carries a trusted prefix: the initial run
of indices whose b_k pass the exact symmetry check b_k = 1/2.
"""

import csv
import json
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from . import numerics
from .errors import DegreeTooLarge, InsufficientMoments, LostOrthogonality
from .numerics import (
    PrecisionContext,
    from_decimal_string,
    to_decimal_string,
    tridiag_eigenvalues,
)

DEFAULT_SCAN_TOL = "1e-20"


@dataclass
class RecurrenceCoefficients:
    """Coefficients b_0..b_{n} and squared off-diagonals a_1^2..a_m^2.

    ``a2[i]`` holds the squared coefficient of index i + 1.  Indices below
    ``trusted_prefix`` passed the symmetry validation; consumers refuse to
    evaluate beyond it.
    """

    b: list
    a2: list
    provenance: dict
    trusted_prefix: int

    @property
    def digits(self):
        return self.provenance["digits"]


def stieltjes(mu, n_max, ctx=None):
    """Discretized Stieltjes procedure on a discrete measure.

    Iterates pi_{k+1} = (x - b_k) pi_k - a_k^2 pi_{k-1} on the node values,
    with b_k = <x pi_k, pi_k>/<pi_k, pi_k> and a_{k+1}^2 =
    <pi_{k+1}, pi_{k+1}>/<pi_k, pi_k>; all inner products are weighted sums
    accumulated in a fixed left-to-right node order.

    Parameters
    ----------
    mu : DiscreteMeasure
    n_max : highest coefficient index; must stay below the node count
    ctx : PrecisionContext, 100 digits by default

    Returns
    -------
    RecurrenceCoefficients with b_0..b_{n_max} and a_1^2..a_{n_max}^2.

    Raises
    ------
    DegreeTooLarge
        If n_max is not below the number of nodes.
    LostOrthogonality
        If a squared norm stops being positive.
    """
    ctx = ctx or PrecisionContext(numerics.STIELTJES_DIGITS)
    if n_max >= len(mu.nodes):
        raise DegreeTooLarge(f"n_max={n_max} needs more than {len(mu.nodes)} nodes")
    with ctx.working():
        xs = [ctx.from_fraction(x) for x in mu.nodes]
        ws = [ctx.from_fraction(w) for w in mu.weights]
        wxs = [w * x for w, x in zip(ws, xs)]
        b = []
        a2 = []
        pi_prev = None
        pi = [mpf(1)] * len(xs)
        norm_prev = None
        for k in range(n_max + 1):
            norm = mpf(0)
            xint = mpf(0)
            for w, wx, p in zip(ws, wxs, pi):
                p2 = p * p
                norm += w * p2
                xint += wx * p2
            if norm <= 0:
                raise LostOrthogonality(f"squared norm of degree {k} is not positive")
            b.append(xint / norm)
            if k:
                a2.append(norm / norm_prev)
            if k < n_max:
                bk = b[k]
                if k:
                    ak2 = a2[k - 1]
                    pi, pi_prev = (
                        [(x - bk) * p - ak2 * pp for x, p, pp in zip(xs, pi, pi_prev)],
                        pi,
                    )
                else:
                    pi, pi_prev = [x - bk for x in xs], pi
            norm_prev = norm
    source = f"empirical level {mu.metadata}" if isinstance(mu.metadata, int) else str(mu.metadata)
    provenance = {"method": "stieltjes", "source": source, "digits": ctx.digits}
    return RecurrenceCoefficients(b=b, a2=a2, provenance=provenance, trusted_prefix=len(b))


def chebyshev(m, n_max, ctx=None):
    """Chebyshev algorithm: ordinary moments to recurrence coefficients.

    Runs the mixed-moment recursion

        sigma_{k,l} = sigma_{k-1,l+1} - b_{k-1} sigma_{k-1,l}
                      - a_{k-1}^2 sigma_{k-2,l}

    keeping only two rolling rows of the sigma table.  Requires
    m_0..m_{2 n_max}; yields b_0..b_{n_max - 1} and a_1^2..a_{n_max}^2.
    If a diagonal entry sigma_{k,k} stops being positive the run is cut
    there and trusted_prefix marks the cut; otherwise the prefix comes from
    the b_k = 1/2 symmetry scan.

    Raises
    ------
    InsufficientMoments
        If fewer than 2 n_max + 1 moments are supplied.
    """
    ctx = ctx or PrecisionContext(numerics.MOMENTS_DIGITS)
    values = m.values
    if len(values) < 2 * n_max + 1:
        raise InsufficientMoments(
            f"need m_0..m_{2 * n_max} ({2 * n_max + 1} moments), got {len(values)}"
        )
    lost_positivity = False
    with ctx.working():
        prev = [ctx.to_mpf(v) for v in values[: 2 * n_max + 1]]  # row k-1, sigma_{0,l} = m_l
        prevprev = None
        b = [prev[1] / prev[0]]
        a2 = []
        for k in range(1, n_max + 1):
            width = 2 * (n_max - k) + 1
            bk1 = b[k - 1]
            if k == 1:
                new = [prev[i + 2] - bk1 * prev[i + 1] for i in range(width)]
            else:
                ak1 = a2[k - 2]
                new = [
                    prev[i + 2] - bk1 * prev[i + 1] - ak1 * prevprev[i + 2]
                    for i in range(width)
                ]
            if new[0] <= 0:
                lost_positivity = True
                break
            a2.append(new[0] / prev[0])
            if width >= 2:
                b.append(new[1] / new[0] - prev[1] / prev[0])
            prevprev, prev = prev, new
    provenance = {
        "method": "chebyshev",
        "source": dict(m.provenance),
        "digits": ctx.digits,
    }
    rc = RecurrenceCoefficients(b=b, a2=a2, provenance=provenance, trusted_prefix=len(b))
    if lost_positivity:
        provenance["lost_positivity_at"] = len(a2) + 1
        rc.trusted_prefix = min(rc.trusted_prefix, len(a2))
    rc.trusted_prefix = min(rc.trusted_prefix, trusted_prefix_scan(rc))
    return rc


def eval_monic(rc, n, x, ctx):
    """Value of the monic degree-n polynomial by forward recurrence."""
    if n >= rc.trusted_prefix:
        raise DegreeTooLarge(f"degree {n} is beyond the trusted prefix {rc.trusted_prefix}")
    with ctx.working():
        x = ctx.to_mpf(x)
        p_prev = mpf(0)
        p = mpf(1)
        for k in range(n):
            p, p_prev = (x - rc.b[k]) * p - (rc.a2[k - 1] * p_prev if k else 0), p
        return +p


def geometric_means(rc):
    """Running geometric means g_k = (a_1^2 ... a_k^2)^(1/k).

    Computed as exp of the running mean of logarithms so long products
    cannot underflow; k runs over the trusted prefix (length
    trusted_prefix - 1).
    """
    with mp.workdps(rc.digits):
        out = []
        acc = mpf(0)
        for k in range(1, rc.trusted_prefix):
            acc += mpmath.log(rc.a2[k - 1])
            out.append(mpmath.exp(acc / k))
        return out


def jacobi_zeros(rc, n, ctx):
    """Zeros of the degree-n polynomial: eigenvalues of the n x n Jacobi matrix."""
    if n >= rc.trusted_prefix:
        raise DegreeTooLarge(f"degree {n} is beyond the trusted prefix {rc.trusted_prefix}")
    with ctx.working():
        diag = rc.b[:n]
        off = [mpmath.sqrt(v) for v in rc.a2[: n - 1]]
        return tridiag_eigenvalues(diag, off, ctx)


def trusted_prefix_scan(rc, tol=None):
    """First index where the exact symmetry b_k = 1/2 visibly fails.

    Returns the smallest k with |b_k - 1/2| > tol (default 1e-20), or the
    full length of b when all pass.  A non-positive a_k^2 cuts the prefix
    at k even earlier.
    """
    with mp.workdps(rc.digits):
        tol = mpf(DEFAULT_SCAN_TOL) if tol is None else +mpf(tol)
        half = mpf(1) / 2
        prefix = len(rc.b)
        for k, bk in enumerate(rc.b):
            if abs(bk - half) > tol:
                prefix = k
                break
        for i, v in enumerate(rc.a2):
            if v <= 0 and i + 1 < prefix:
                prefix = i + 1
                break
        return prefix


def nevai_diagnostics(rc):
    """Summary report of the squared-coefficient behavior over the trusted prefix.

    Contains the running and final arithmetic mean of a_k^2, their min and
    max, the final geometric mean, and the two reference constants the
    sequences are compared against: 1/16 (squared capacity of [0, 1]) and
    1/4.
    """
    if rc.trusted_prefix < 5:
        raise ValueError(f"trusted prefix {rc.trusted_prefix} too short for diagnostics")
    with mp.workdps(rc.digits):
        a2 = rc.a2[: rc.trusted_prefix - 1]
        running = []
        acc = mpf(0)
        for k, v in enumerate(a2, start=1):
            acc += v
            running.append(acc / k)
        gm = geometric_means(rc)
        return {
            "count": len(a2),
            "a2_running_mean": running,
            "a2_mean": running[-1],
            "a2_min": min(a2),
            "a2_max": max(a2),
            "geometric_mean_final": gm[-1],
            "reference_capacity_squared": mpf(1) / 16,
            "reference_capacity": mpf(1) / 4,
        }


def save_coefficients(rc, path, fmt="csv"):
    """Write coefficients as CSV (k, b_k, a2_k) or JSON with provenance."""
    with open(path, "wb") as fh:
        fh.write(coefficients_bytes(rc, fmt))


def coefficients_bytes(rc, fmt="csv"):
    if fmt == "json":
        doc = {
            "provenance": rc.provenance,
            "trusted_prefix": rc.trusted_prefix,
            "b": [to_decimal_string(v) for v in rc.b],
            "a2": [to_decimal_string(v) for v in rc.a2],
        }
        return (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode("utf-8")
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "b_k", "a2_k"])
    for k in range(max(len(rc.b), len(rc.a2) + 1)):
        bcell = to_decimal_string(rc.b[k]) if k < len(rc.b) else ""
        acell = to_decimal_string(rc.a2[k - 1]) if 1 <= k <= len(rc.a2) else ""
        writer.writerow([k, bcell, acell])
    return buf.getvalue().encode("utf-8")


def load_coefficients(path, digits=None):
    """Read coefficients saved by :func:`save_coefficients` (JSON or CSV).

    CSV files carry no provenance, so a working precision may be supplied;
    it defaults to a value generous enough for the printed digits.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    text = raw.decode("utf-8")
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        ctx = PrecisionContext(doc["provenance"]["digits"])
        return RecurrenceCoefficients(
            b=[from_decimal_string(s, ctx) for s in doc["b"]],
            a2=[from_decimal_string(s, ctx) for s in doc["a2"]],
            provenance=doc["provenance"],
            trusted_prefix=doc["trusted_prefix"],
        )
    rows = list(csv.reader(text.splitlines()))
    if not rows or rows[0] != ["k", "b_k", "a2_k"]:
        raise ValueError("unrecognized coefficient file")
    if digits is None:
        digits = max(30, max((len(c) for row in rows[1:] for c in row[1:] if c), default=30))
    ctx = PrecisionContext(digits)
    b = [from_decimal_string(row[1], ctx) for row in rows[1:] if row[1]]
    a2 = [from_decimal_string(row[2], ctx) for row in rows[1:] if row[2]]
    provenance = {"method": "csv-import", "source": str(path), "digits": digits}
    rc = RecurrenceCoefficients(b=b, a2=a2, provenance=provenance, trusted_prefix=len(b))
    rc.trusted_prefix = min(rc.trusted_prefix, trusted_prefix_scan(rc))
    return rc
