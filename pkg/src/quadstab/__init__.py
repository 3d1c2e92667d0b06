"""quadstab: iterated quadratic polynomials over Q and F_q(t) — stability
criteria, constructions that are irreducible globally but reducible modulo
every prime, and censuses of stable primes."""

from .arith import (
    FactorBudget,
    Factorization,
    SquareClass,
    factor,
    is_prime,
    is_square,
    is_square_fraction,
    jacobi,
    legendre,
    primes_in_range,
    primes_up_to,
    square_class,
)
from .config import Config, DEFAULT_CONFIG
from .errors import (
    DegreeCapExceeded,
    HypothesisViolation,
    InseparableModulus,
    QuadstabError,
    UnknownCofactorError,
    VerificationError,
)
from .quadmap import (
    CriterionResult,
    CriticalOrbit,
    QuadMapZ,
    StabilityCertificate,
    adjusted_values,
    construct_everywhere_reducible,
    critical_orbit,
    orbit_criterion,
    reducible_mod_p,
    refined_orbit_criterion,
    rigid_valuation_probe,
    stability_by_parity,
    stability_by_valuation,
    suggest_s,
)

__version__ = "0.1.0"
