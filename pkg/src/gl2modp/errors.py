"""Exception hierarchy.

The CLI maps these onto its exit-code contract, so every error raised by the
library falls under exactly one of InvalidInput, UnsupportedCase or
PrecisionError.
"""


class GL2Error(Exception):
    """Base class for all library errors."""


class InvalidInput(GL2Error, ValueError):
    """Malformed or inconsistent data (CLI exit code 2)."""


class UnsupportedCase(GL2Error):
    """Input outside the cases the library can describe (CLI exit code 3)."""


class PrecisionError(GL2Error, ArithmeticError):
    """A quantity is not certified at the available precision (CLI exit code 4)."""


# algebra kernel

class ZeroInversion(InvalidInput, ZeroDivisionError):
    pass


class InexactDivision(InvalidInput, ArithmeticError):
    pass


class NonUnitBase(InvalidInput):
    pass


class InsufficientPrecision(PrecisionError):
    """An operation would read digits that were never certified."""


# characters

class TorsionViolation(InvalidInput):
    pass


class NotResiduallyTrivial(InvalidInput):
    pass


class Indistinguishable(PrecisionError):
    """Two characters agree to full precision, so no congruence level exists."""


class GroupMismatch(InvalidInput):
    pass


# lattices

class PrecisionBudgetExceeded(PrecisionError):
    pass


class NotStable(InvalidInput):
    pass


class SplitReduction(InvalidInput):
    pass


# ext spaces

class ZeroClass(InvalidInput):
    pass


class NotCenterTrivial(InvalidInput):
    pass


# correspondence

class SearchSpaceTooLarge(InvalidInput):
    pass


class InsufficientEvidence(PrecisionError):
    pass
