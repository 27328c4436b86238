"""Exact decomposition of hyperelliptic integrals into elliptic integrals.

The library works over exact number-field towers: no floating point
enters any result.  Three entry points cover the main workflow —
``rank_bound`` (modular upper bound on the number of elliptic factors of
the Jacobian), ``elliptic_factors`` (explicit morphisms (κ, F, G) with
S·G² = F(F−1)(F−κ)), and ``hyperelliptic_to_elliptic`` (rewrite
∫P/(Q√S)dx in algebraic, logarithmic, and elliptic-integral terms,
certified by exact differentiation).
"""

from .curves import HyperellipticCurve, normalize_curve
from .domains import QQ
from .errors import (
    BadReductionError,
    DomainMismatchError,
    HyperellError,
    NotDecomposableError,
    ParseError,
    ReduciblePolynomialError,
    ResourceLimitError,
)
from .expressions import (
    CurveFunction,
    EllipticExpression,
    FirstKind,
    LogTerm,
    SecondKind,
    ThirdKind,
    differentiate,
)
from .factor import factor_unipoly, splitting_field
from .integrate import (
    HyperellipticIntegrand,
    elliptic_divisors,
    hermite_reduce,
    hyperelliptic_to_elliptic,
    reduce_divisor,
)
from .morphisms import (
    EllipticMorphism,
    elliptic_factors,
    independence_rank,
    verify_morphism,
)
from .parsing import parse_element, parse_poly, parse_ratfunc
from .ratfunc import RationalFunction, partial_fractions
from .towers import TowerField
from .unipoly import UniPoly
from .zeta import RankBound, ZetaPsi, count_points, psi_from_counts, psi_power, rank_bound

__version__ = "0.1.0"

__all__ = [
    "BadReductionError",
    "CurveFunction",
    "DomainMismatchError",
    "EllipticExpression",
    "EllipticMorphism",
    "FirstKind",
    "HyperellError",
    "HyperellipticCurve",
    "HyperellipticIntegrand",
    "LogTerm",
    "NotDecomposableError",
    "ParseError",
    "QQ",
    "RankBound",
    "RationalFunction",
    "ReduciblePolynomialError",
    "ResourceLimitError",
    "SecondKind",
    "ThirdKind",
    "TowerField",
    "UniPoly",
    "ZetaPsi",
    "count_points",
    "differentiate",
    "elliptic_divisors",
    "elliptic_factors",
    "factor_unipoly",
    "hermite_reduce",
    "hyperelliptic_to_elliptic",
    "independence_rank",
    "normalize_curve",
    "parse_element",
    "parse_poly",
    "parse_ratfunc",
    "partial_fractions",
    "psi_from_counts",
    "psi_power",
    "rank_bound",
    "reduce_divisor",
    "splitting_field",
    "verify_morphism",
]
