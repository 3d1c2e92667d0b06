"""Exception types shared across the package."""


class QuadstabError(Exception):
    pass


class HypothesisViolation(QuadstabError):
    """A constructor precondition failed; `clause` names the failed clause."""

    def __init__(self, clause: str, message: str = ""):
        self.clause = clause
        super().__init__(message or clause)


class VerificationError(QuadstabError):
    """An internal cross-check failed.  Indicates a bug, not a math failure."""


class DegreeCapExceeded(QuadstabError):
    pass


class UnknownCofactorError(QuadstabError):
    """A square class with an unresolved cofactor was used where exact class
    membership is required."""


class InseparableModulus(QuadstabError):
    """Reduction mod p is inseparable; the prime must be excluded from
    cycle-type statistics."""
