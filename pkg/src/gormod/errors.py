"""Exception types shared across the package.

Every error that a caller can meaningfully react to gets its own class;
plain ValueError is reserved for malformed arguments (wrong lengths,
non-integers) that indicate a programming error rather than bad input data.
"""


class GormodError(Exception):
    """Base class for all package-specific errors."""


class NotPointed(GormodError):
    """The cone contains a line, so the monoid has units other than 0."""


class NotFullDimensional(GormodError):
    """The cone does not span the ambient lattice."""


class NotQGorenstein(GormodError):
    """The canonical class has infinite order; no canonical cover exists."""


class NoMonomialTrivialization(GormodError):
    """No lattice vector trivializes the relevant power of the canonical divisor."""


class MonoidMismatch(GormodError):
    """Operands live over different monoids."""


class BudgetExceeded(GormodError):
    """An enumeration hit its configured bound without a completeness certificate."""


class BoxTooSmall(GormodError):
    """A box-limited verification could not certify its answer at this box size."""


class NoInverse(GormodError):
    """A required scalar (typically the group order) is not invertible in the field."""


class BadRoot(GormodError):
    """The supplied scalar is not a primitive root of unity of the required order."""


class ParseError(GormodError):
    """An input document does not match the expected schema."""
