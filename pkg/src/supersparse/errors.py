"""Exception types shared across the package."""


class SupersparseError(Exception):
    """Base class for all domain errors raised by this package."""


class ArityError(SupersparseError):
    """Exponent tuple length does not match the polynomial's variable count."""


class RingMismatchError(SupersparseError):
    """Operands live in different coefficient rings."""


class UnsupportedRingError(SupersparseError):
    """Operation is not defined over the given coefficient ring."""


class BoundError(SupersparseError):
    """An exponent or degree violates a declared bound."""


class BudgetError(SupersparseError):
    """A configured resource budget (bits, terms, candidates) was exceeded."""


class ZeroPolynomialError(SupersparseError):
    """Division or reduction by the zero polynomial."""


class InexactDivisionError(SupersparseError):
    """Integer polynomial division hit a non-dividing leading coefficient."""


class NotInSubgroupError(SupersparseError):
    """Element lies outside the expected power-of-two subgroup."""


class NonSplitError(SupersparseError):
    """A recurrence polynomial did not split into distinct subgroup roots."""


class PrimeSearchError(SupersparseError):
    """No suitable prime found within the attempt budget."""


class FormatError(SupersparseError):
    """Malformed polynomial file."""


class VerificationError(SupersparseError):
    """A Monte Carlo verification probe contradicted the candidate."""
