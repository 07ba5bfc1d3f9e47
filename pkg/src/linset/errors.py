"""Exception types raised across the package."""


class InversionOfZero(ZeroDivisionError):
    pass


class ZeroInput(ValueError):
    pass


class NormNotOne(ValueError):
    pass


class FieldTooLarge(ValueError):
    """An enumeration oracle was asked to run beyond its size guard."""


class NotScattered(ValueError):
    pass


class VertexMeetsSubgeometry(ValueError):
    pass


class DegenerateSpan(ValueError):
    pass


class BadElementCode(ValueError):
    pass


class OracleMismatch(AssertionError):
    """A witness returned by an oracle failed its own re-check."""
