"""Moments of the question mark measure via truncated infinite linear systems.

Two system variants are assembled from the series c_k = sum_n 1/(2^n n^k)
and d_k = 2 sum_{n>=2} 1/(2^n n^k) = 2 c_k - 1.  Variant A has alternating
signs and huge binomial-weighted entries (ill-conditioned but, after
truncation, very accurate); variant B has all-positive terms and a small
condition number but larger truncation error.  In both, rows s = 1..K hold
the unknowns m_1..m_K and the known m_0 = 1 contributes the right-hand side.
"""

import json
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp, mpf

from . import numerics
from .numerics import PrecisionContext, from_decimal_string, solve_dense, to_decimal_string

logger = logging.getLogger(__name__)

DEFAULT_K = 500
DEFAULT_TERMS = 400


@dataclass
class MomentVector:
    """Moments m_0..m_K with provenance (variant, system size, series
    truncation, digits)."""

    values: list
    provenance: dict

    def __len__(self):
        return len(self.values)


@lru_cache(maxsize=None)
def _c_value(k, terms, digits):
    with mp.workdps(digits):
        acc = mpf(0)
        for n in range(1, terms + 1):
            acc += mpf(1) / ((1 << n) * n**k)
        return +acc


@lru_cache(maxsize=None)
def _d_value(k, terms, digits):
    # Summing from n = 2 directly avoids the cancellation 2*c_k - 1 would
    # suffer once c_k approaches 1/2; the two forms are algebraically equal.
    with mp.workdps(digits):
        acc = mpf(0)
        for n in range(2, terms + 1):
            acc += mpf(2) / ((1 << n) * n**k)
        return +acc


def c_series(k, terms=DEFAULT_TERMS, ctx=None):
    """Truncated series sum_{n=1}^{terms} 1/(2^n n^k).

    The truncation error is below 2^(-terms).
    """
    ctx = ctx or PrecisionContext(numerics.MOMENTS_DIGITS)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    return _c_value(k, terms, ctx.digits)


def d_series(k, terms=DEFAULT_TERMS, ctx=None):
    """Truncated series 2 * sum_{n=2}^{terms} 1/(2^n n^k), equal to 2 c_k - 1."""
    ctx = ctx or PrecisionContext(numerics.MOMENTS_DIGITS)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    return _d_value(k, terms, ctx.digits)


def assemble_system(variant, K, terms=DEFAULT_TERMS, ctx=None):
    """Assemble the K x K truncated moment system (matrix, rhs).

    Row s (s = 1..K) expresses m_s in terms of m_1..m_K:

    * variant "A": m_s - sum_k (-1)^k c_{k+s} C(k+s-1, k) m_k = c_s
    * variant "B": m_s - sum_k d_{k+s} C(k+s-1, k) m_k = d_s

    Binomial coefficients are exact integers; each entry is rounded once.
    """
    ctx = ctx or PrecisionContext(numerics.MOMENTS_DIGITS)
    if variant not in ("A", "B"):
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    if K < 2:
        raise ValueError("K must be >= 2")
    series = c_series if variant == "A" else d_series
    coeff = [series(j, terms, ctx) for j in range(0, 2 * K + 1)]
    with ctx.working():
        rows = []
        rhs = []
        for s in range(1, K + 1):
            row = []
            for k in range(1, K + 1):
                base = coeff[k + s] * math.comb(k + s - 1, k)
                # moving the k-th term across the equality flips its sign:
                # variant A gets -(-1)^k = (-1)^(k+1), variant B plain minus
                if variant == "A":
                    entry = base if k % 2 else -base
                else:
                    entry = -base
                if k == s:
                    entry = 1 + entry
                row.append(entry)
            rows.append(row)
            rhs.append(coeff[s])
        return rows, rhs


def solve_moments(variant="A", K=DEFAULT_K, terms=DEFAULT_TERMS, ctx=None):
    """Solve the truncated system for m_1..m_K and prepend m_0 = 1.

    Parameters
    ----------
    variant : "A" or "B"
    K : system size (number of unknown moments)
    terms : series truncation for c_k / d_k
    ctx : PrecisionContext; defaults to 400 digits

    Returns
    -------
    MomentVector
        values[0] is exactly 1; provenance records the run parameters.
        |m_1 - 1/2| is logged as the built-in accuracy gauge.
    """
    ctx = ctx or PrecisionContext(numerics.MOMENTS_DIGITS)
    rows, rhs = assemble_system(variant, K, terms, ctx)
    solution = solve_dense(rows, rhs, ctx)
    with ctx.working():
        values = [mpf(1)] + solution
        gauge = abs(values[1] - mpf(1) / 2)
    logger.info(
        "moment system %s K=%d terms=%d digits=%d: |m_1 - 1/2| = %s",
        variant, K, terms, ctx.digits, to_decimal_string(gauge),
    )
    provenance = {"variant": variant, "K": K, "series_terms": terms, "digits": ctx.digits}
    return MomentVector(values=values, provenance=provenance)


def m1_error(m, ctx):
    """|m_1 - 1/2| for a moment vector, the standard accuracy gauge."""
    with ctx.working():
        return abs(m.values[1] - mpf(1) / 2)


def _determinant(rows):
    """Determinant by elimination with partial pivoting (small matrices)."""
    n = len(rows)
    rows = [list(r) for r in rows]
    sign = 1
    for i in range(n):
        p = max(range(i, n), key=lambda j: abs(rows[j][i]))
        if not rows[p][i]:
            return mpf(0)
        if p != i:
            rows[i], rows[p] = rows[p], rows[i]
            sign = -sign
        piv = rows[i][i]
        for j in range(i + 1, n):
            f = rows[j][i] / piv
            if f:
                rows[j][i + 1:] = [x - f * y for x, y in zip(rows[j][i + 1:], rows[i][i + 1:])]
    det = mpf(sign)
    for i in range(n):
        det *= rows[i][i]
    return det


def hankel_determinants(m, max_size, ctx):
    """Leading Hankel determinants det[(m_{i+j})_{i,j<r}] for r = 1..max_size."""
    values = m.values if isinstance(m, MomentVector) else list(m)
    feasible = min(max_size, (len(values) + 1) // 2)
    dets = []
    with ctx.working():
        vals = [ctx.to_mpf(v) for v in values]
        for r in range(1, feasible + 1):
            rows = [[vals[i + j] for j in range(r)] for i in range(r)]
            dets.append(_determinant(rows))
    return dets


def validate_moments(m, ctx, m1_tol=None):
    """Sanity report for a moment vector.

    Checks m_0 = 1, the m_1 accuracy gauge against a caller tolerance,
    monotone decrease, and positivity of the leading Hankel determinants
    up to size 6.  Report-only: nothing raises.
    """
    with ctx.working():
        tol = ctx.to_mpf(m1_tol) if m1_tol is not None else mpf("1e-10")
        vals = [ctx.to_mpf(v) for v in m.values]
        gauge = abs(vals[1] - mpf(1) / 2) if len(vals) > 1 else mpf("inf")
        dets = hankel_determinants(vals, 6, ctx)
        report = {
            "m0_is_one": vals[0] == 1,
            "m1_error": gauge,
            "m1_within_tol": gauge <= tol,
            "monotone_nonincreasing": all(b <= a for a, b in zip(vals, vals[1:])),
            "hankel_determinants": dets,
            "hankel_positive": all(d > 0 for d in dets),
        }
    report["passed"] = (
        report["m0_is_one"]
        and report["m1_within_tol"]
        and report["monotone_nonincreasing"]
        and report["hankel_positive"]
    )
    return report


def save_moments(m, path):
    """Write a moment vector as JSON with full-precision decimal strings."""
    payload = moments_json_bytes(m)
    with open(path, "wb") as fh:
        fh.write(payload)


def moments_json_bytes(m):
    doc = {
        "provenance": m.provenance,
        "values": [to_decimal_string(v) for v in m.values],
    }
    return (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode("utf-8")


def load_moments(path_or_bytes):
    """Read a moment vector written by :func:`save_moments`."""
    if isinstance(path_or_bytes, bytes):
        doc = json.loads(path_or_bytes.decode("utf-8"))
    else:
        with open(path_or_bytes, "rb") as fh:
            doc = json.loads(fh.read().decode("utf-8"))
    ctx = PrecisionContext(doc["provenance"]["digits"])
    values = [from_decimal_string(s, ctx) for s in doc["values"]]
    return MomentVector(values=values, provenance=doc["provenance"])
