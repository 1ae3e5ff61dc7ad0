class CommapsError(Exception):
    """Base class for every error raised by this package."""


class InputError(CommapsError, ValueError):
    """Malformed user input (files, labels, coefficients)."""


# rings
class TwoTorsion(CommapsError, ValueError):
    pass


class InvalidModulus(CommapsError, ValueError):
    pass


class NotAField(CommapsError):
    pass


class RingParseError(InputError):
    pass


# pre-orders
class NotTransitive(InputError):
    pass


class UnknownElement(InputError):
    pass


class DuplicateElement(InputError):
    pass


class OracleBoundExceeded(CommapsError):
    pass


# algebra
class NotRelated(CommapsError, ValueError):
    pass


class MixedAmbient(CommapsError, ValueError):
    pass


# commuting maps
class NotConnected(CommapsError):
    pass


class ShapeViolation(CommapsError):
    pass


class MissingCoefficient(CommapsError, KeyError):
    pass


class NotCommuting(CommapsError):
    pass


class UnknownBasisElement(InputError):
    pass
