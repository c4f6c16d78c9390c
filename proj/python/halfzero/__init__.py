"""Exact central-point vanishing of quadratic L-functions over F_q(t).

Polynomials are passed as canonical text (each coefficient as e base-p
digits, leading coefficient first, e.g. "100040" for t^5 + 4t over F_5) or
as comma-separated coefficient indices ("1,0,0,0,4,0").
"""

from ._core import (
    BudgetError,
    CensusInterrupted,
    CrossCheckError,
    InternalAssertion,
    TwistVerificationError,
    census,
    density,
    eigenvalue_report,
    find_base_curves,
    jacobi,
    lpoly,
    normalize,
    sample_census,
    squarefree_part,
    twist_family,
    vanishes,
)

__all__ = [
    "BudgetError",
    "CensusInterrupted",
    "CrossCheckError",
    "InternalAssertion",
    "TwistVerificationError",
    "census",
    "density",
    "eigenvalue_report",
    "find_base_curves",
    "jacobi",
    "lpoly",
    "normalize",
    "sample_census",
    "squarefree_part",
    "twist_family",
    "vanishes",
]
