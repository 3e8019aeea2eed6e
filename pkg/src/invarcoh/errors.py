"""Exception types raised by the engine."""


class InvarcohError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(InvarcohError):
    pass


class FieldMismatch(InvarcohError):
    pass


class NotPrime(InvarcohError):
    pass


class OrderNotInvertible(InvarcohError):
    """The group order is not invertible in the base field (p divides |G|)."""


class RingMismatch(InvarcohError):
    pass


class NotHomogeneous(InvarcohError):
    pass


class NotFiniteWithinBound(InvarcohError):
    """Group closure exceeded the element bound; the group may be infinite."""


class UnsupportedField(InvarcohError):
    pass


class NotEquivariant(InvarcohError):
    """A differential fails to commute with the group action."""


class NotAComplex(InvarcohError):
    pass


class NotHomogeneousIdeal(InvarcohError):
    pass


class NotInvariantIdeal(InvarcohError):
    pass


class NotStabilized(InvarcohError):
    """A graded cohomology piece did not stabilize within the level bound."""


class RangeTruncatesModule(InvarcohError):
    """The requested degree window cuts off part of the socle."""


class ValidationError(InvarcohError):
    pass


class ParseError(InvarcohError):
    def __init__(self, message: str, column: int | None = None):
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)
        self.column = column
