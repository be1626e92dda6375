"""Exception types shared across the package."""


class CrownError(Exception):
    """Base class for package-specific errors."""


class RejectedWord(CrownError):
    """A sign tuple violates a word membership condition.

    `index` is the 1-based coordinate where the first violation occurs
    (for an adjacent-pair violation, the first coordinate of the pair).
    """

    def __init__(self, index, reason):
        self.index = index
        self.reason = reason
        super().__init__(f"rejected at position {index}: {reason}")


class CapExceeded(CrownError):
    """A configured size cap would be exceeded by the requested computation."""


class NotAMorphism(CrownError):
    """A vertex map does not preserve the relation; `witness` is an offending pair."""

    def __init__(self, witness, message="vertex map does not preserve the relation"):
        self.witness = witness
        super().__init__(f"{message}: {witness}")


class IllDefinedQuotient(CrownError):
    """No well-defined map on the quotient graph exists for the given data."""


class HomSetViolation(CrownError):
    """A monoid-algebra element is not supported on the required hom-set."""


class NotACover(CrownError):
    """A family of graph morphisms fails to cover its common target."""
