"""Exception hierarchy.

Errors split into two families so the command line can map them to exit
codes: ``UsageError`` subclasses mean the input was malformed, everything
else under ``ComputationError`` means a well-formed request could not be
carried out (budget, hypothesis, singular data).
"""


class ArakountError(Exception):
    pass


class UsageError(ArakountError, ValueError):
    pass


class ComputationError(ArakountError):
    pass


class InvalidPoint(UsageError):
    pass


class InvalidPolynomial(UsageError):
    pass


class InvalidParams(UsageError):
    pass


class InvalidFieldData(UsageError):
    pass


class UnknownVariable(UsageError):
    pass


class ExprSyntaxError(UsageError):
    """Malformed polynomial text; ``position`` is a 0-based column."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonHomogeneous(UsageError):
    def __init__(self, d1, d2):
        super().__init__(f"polynomial is not homogeneous: degrees {d1} and {d2}")
        self.degrees = (d1, d2)


class HypothesisViolated(ComputationError):
    pass


class BudgetExceeded(ComputationError):
    pass


class NotOnVariety(ComputationError):
    pass


class Unsupported(ComputationError):
    pass


class SingularMinor(ComputationError):
    pass


class SymbolicOnly(Unsupported):
    """A quantity depends on constants that are only known to exist."""

    def __init__(self, message, expression="", unknowns=()):
        super().__init__(message)
        self.expression = expression
        self.unknowns = tuple(unknowns)
