"""Exception types shared across the package."""


class HopfLiftError(Exception):
    pass


class ZeroInverse(HopfLiftError, ZeroDivisionError):
    pass


class ArityMismatch(HopfLiftError, ValueError):
    pass


class TooLarge(HopfLiftError):
    pass


class AlphabetMismatch(HopfLiftError, ValueError):
    pass


class InhomogeneousWord(HopfLiftError, ValueError):
    pass


class OrderViolation(HopfLiftError, ValueError):
    """A rule whose left side is not the strict leading word."""


class NotInterReduced(HopfLiftError, ValueError):
    pass


class NotConfluent(HopfLiftError):
    pass


class InfiniteBasis(HopfLiftError):
    pass


class ParametricScalars(HopfLiftError):
    pass


class Unclassifiable(HopfLiftError):
    pass


class JordanP2Dim(HopfLiftError):
    pass


class IncompatibleData(HopfLiftError, ValueError):
    pass


class DimensionBlowup(HopfLiftError):
    pass


class Inadmissible(HopfLiftError, ValueError):
    pass


class ParseError(HopfLiftError, ValueError):
    pass
