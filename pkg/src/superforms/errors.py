"""Exception hierarchy shared by all modules."""


class SuperformsError(Exception):
    """Base class for every error raised by the package."""


class ConfigurationError(SuperformsError):
    """Mismatched Grassmann contexts or an exhausted generator budget."""


class ParityError(SuperformsError):
    """A value has the wrong (or no definite) parity for the operation."""


class NotInvertible(SuperformsError):
    """The body of a pivot, scalar or block determinant vanishes."""


class ShapeError(SuperformsError):
    """Matrix shapes, parity signatures or form signatures do not match."""


class DomainError(SuperformsError):
    """A form was evaluated outside the locus where it is defined."""


class DegreeError(SuperformsError):
    """An operator was applied to a form of unsupported degree."""


class InvalidForm(SuperformsError):
    """A candidate form violates one of its defining equations."""
