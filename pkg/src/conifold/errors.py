"""Exception hierarchy shared by every module of the package."""


class ConifoldError(Exception):
    """Base class for all errors raised by this package."""


# input / parse errors (CLI exit code 2)
class InputError(ConifoldError):
    pass


class PolynomialSyntaxError(InputError):
    pass


class NegativeCoefficient(InputError):
    pass


class NotUnimodular(InputError):
    pass


class NonPrimitiveRay(InputError):
    pass


class DuplicateRay(InputError):
    pass


class DegenerateSpan(InputError):
    pass


class UnknownName(InputError):
    pass


class NoCertificate(ConifoldError):
    pass


class HypothesisViolated(ConifoldError):
    """The origin is not strictly inside the Newton polytope."""

    def __init__(self, message, validation=None):
        super().__init__(message)
        self.validation = validation


# numerical failures (CLI exit code 3)
class NumericalError(ConifoldError):
    pass


class OverflowRisk(NumericalError):
    pass


class MaxIterations(NumericalError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class NotPositiveDefinite(NumericalError):
    pass


class TermBudgetExceeded(NumericalError):
    pass


class InsufficientData(NumericalError):
    pass
