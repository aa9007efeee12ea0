"""minkq: orthogonal polynomials for the Minkowski question mark measure.

The measure is the singular continuous probability distribution on [0, 1]
whose distribution function maps mediant constructions to dyadic rationals.
This package computes its orthogonal-polynomial recurrence coefficients by
two independent routes (discretized Stieltjes on mediant-sequence empirical
measures; truncated moment systems plus the Chebyshev algorithm) and
evaluates the associated regularity diagnostics, all in arbitrary-precision
arithmetic.
"""

__version__ = "0.1.0"

from .errors import (
    DegreeTooLarge,
    DimensionMismatch,
    EmptyInterval,
    InsufficientMoments,
    LevelTooLarge,
    LostOrthogonality,
    MinkqError,
    NonPositiveOffdiagonal,
    OutOfRange,
    SingularMatrix,
)
from .farey import MinkowskiSequence, continued_fraction, from_continued_fraction, mediant, minkowski_sequence
from .measure import DiscreteMeasure, discrete_moments, empirical_measure, integrate, sup_distance
from .moments import (
    MomentVector,
    assemble_system,
    c_series,
    d_series,
    hankel_determinants,
    load_moments,
    save_moments,
    solve_moments,
    validate_moments,
)
from .numerics import (
    BigReal,
    PrecisionContext,
    Rational,
    cond_inf,
    from_decimal_string,
    solve_dense,
    to_decimal_string,
    tridiag_eigenvalues,
)
from .qfunc import ifs_evaluate, q_gap, q_rational, q_real
from .recurrence import (
    RecurrenceCoefficients,
    chebyshev,
    eval_monic,
    geometric_means,
    jacobi_zeros,
    load_coefficients,
    nevai_diagnostics,
    save_coefficients,
    stieltjes,
    trusted_prefix_scan,
)
