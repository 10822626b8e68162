"""Exception hierarchy shared across the package."""


class ErfqError(Exception):
    """Base class for all errors raised by this package."""


class NearZeroConstantTerm(ErfqError):
    """Series division rejected: the divisor's constant term is below the pivot tolerance."""


class NonVanishingInner(ErfqError):
    """Series composition rejected: the inner series does not vanish at the origin."""


class NotNormalized(ErfqError):
    """A normalized series (c0 = 0, c1 = 1) was required."""


class InvalidSpec(ErfqError):
    """A Schwarz/scale function specification violates its invariants."""


class DomainError(ErfqError):
    """An argument lies outside the mathematical domain of the operation."""


class BranchPointProximity(ErfqError):
    """The integration segment passes too close to a branch point of the integrand."""


class BracketingFailure(ErfqError):
    """Root bracketing found no sign change; the monotonicity assumption does not hold."""


class SingularRelation(ErfqError):
    """A coefficient-recovery multiplier vanished; the linear solve is degenerate."""


class RecursionBreakdown(ErfqError):
    """A coefficient-recursion multiplier vanished; cannot continue the recursion."""


class RegimeError(ErfqError):
    """The requested inequality only holds in a parameter window that excludes this input."""


class ImaginaryResidue(ErfqError):
    """Coefficients that are provably real came back with a large imaginary part."""
