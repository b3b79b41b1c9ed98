"""Exception hierarchy.

Numeric failures (``NumericError`` subclasses) map to CLI exit code 3,
input problems (``InputError`` subclasses) to exit code 2.
"""


class PdStripError(Exception):
    pass


class InputError(PdStripError, ValueError):
    pass


class NumericError(PdStripError, ArithmeticError):
    pass


class MalformedDescriptor(InputError):
    pass


class ParseError(InputError):
    pass


class EmptyIntersection(InputError):
    pass


class UnknownEntry(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ParamOutOfRange(InputError):
    pass


class PointOutsideStrip(InputError):
    pass


class NonHermitianBeyondTolerance(NumericError):
    pass


class OutOfFinitenessInterval(NumericError):
    pass


class ToleranceNotMet(NumericError):
    pass


class InsufficientSamples(NumericError):
    pass


class PoleEvaluation(NumericError):
    pass


class OracleDomain(NumericError):
    pass


class Divergent(NumericError):
    pass


class EvaluatorFailure(NumericError):
    def __init__(self, message, points=None):
        super().__init__(message)
        self.points = points
