"""Exception types raised by the library."""


class MultcodeError(Exception):
    """Base class for every error raised by :mod:`multcode`."""


class NonPrimeCharacteristic(MultcodeError, ValueError):
    pass


class UnsupportedSize(MultcodeError, ValueError):
    pass


class FieldMismatch(MultcodeError, ValueError):
    pass


class DivisionByZero(MultcodeError, ZeroDivisionError):
    pass


class ArityMismatch(MultcodeError, ValueError):
    pass


class DegreeTooLarge(MultcodeError, ValueError):
    pass


class DegreeOutOfRange(MultcodeError, ValueError):
    pass


class ComponentDegreeTooLarge(MultcodeError, ValueError):
    pass


class InvalidInformationSet(MultcodeError, ArithmeticError):
    """The evaluation matrix on a candidate information set is singular."""


class LengthMismatch(MultcodeError, ValueError):
    pass


class ShapeMismatch(MultcodeError, ValueError):
    pass


class NotUnivariate(MultcodeError, ValueError):
    pass
