"""Progressions of high-order finite-field elements.

Classification (r-primitive, (R, r)-free, g-free, k-normal), exhaustive
desk-scale search for arithmetic progressions with prescribed order and
normality defects, numerical character-sum verification, and exact
certification of the existence criteria down to the published thresholds.
"""

from .errors import (
    BadDegree,
    BadPosition,
    CapExceeded,
    FfprogError,
    HypothesisFailed,
    NonPositiveDelta,
    NotADivisor,
    NotADivisorPoly,
    NotNormal,
    NotPrime,
    ReplicationMismatch,
    TooLarge,
    ZeroElement,
    ZeroPolynomial,
)
from .ffcore import FieldCtx, frobenius_q, make_field, mult_order, trace_to_prime
from .intnt import (
    FactoredInt,
    count_squarefree_divisors,
    euler_phi,
    factorize,
    mobius,
    mobius_phi_sum,
    primorial,
    reduce_by_gcd,
)

__version__ = "0.1.0"

__all__ = [
    "FieldCtx", "make_field", "frobenius_q", "mult_order", "trace_to_prime",
    "FactoredInt", "factorize", "euler_phi", "mobius",
    "count_squarefree_divisors", "primorial", "reduce_by_gcd",
    "mobius_phi_sum",
    "FfprogError", "NotPrime", "TooLarge", "CapExceeded", "ZeroElement",
    "ZeroPolynomial", "NotADivisor", "NotADivisorPoly", "NotNormal",
    "BadPosition", "BadDegree", "NonPositiveDelta", "HypothesisFailed",
    "ReplicationMismatch",
    "__version__",
]
