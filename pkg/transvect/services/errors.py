"""
Error hierarchy.

Every error carries a human readable ``detail`` and a ``status`` used as the
process exit code by the command line surface.
"""


class TransvectError(Exception):
    status: int = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


# =========================================================================
# Usage errors (exit status 2)
# =========================================================================


class UsageError(TransvectError):
    status = 2


class DocumentError(UsageError):
    def __init__(self, detail: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + detail)
        self.line = line


class FixtureError(UsageError):
    pass


class VectorSyntaxError(UsageError):
    pass


# =========================================================================
# Precondition errors
# =========================================================================


class DimensionMismatch(TransvectError):
    pass


class DimensionTooLarge(TransvectError):
    pass


class NotAlternating(TransvectError):
    pass


class ArfUndefined(TransvectError):
    pass


class NotSubspace(TransvectError):
    pass


class NotInSpan(TransvectError):
    pass


class NotBasis(TransvectError):
    pass


class Dependent(NotBasis):
    pass


class InvalidTransvector(TransvectError):
    pass


class DomainTooLarge(TransvectError):
    pass


class DomainNotInvariant(TransvectError):
    pass


class NotConnected(TransvectError):
    pass


class NotAdjacent(TransvectError):
    pass


class NoDecomposition(TransvectError):
    pass


class BudgetExceeded(TransvectError):
    pass


class GraphTooLarge(TransvectError):
    pass


class NotDType(TransvectError):
    pass


class InRadical(TransvectError):
    pass


class NotNormalForm(TransvectError):
    pass


class DimensionTooSmall(TransvectError):
    pass


class AllFixed(TransvectError):
    pass


class PreconditionFailed(TransvectError):
    pass


class BlockConditionViolated(TransvectError):
    def __init__(self, detail: str, i: int, j: int, b_i: str | None = None, b_j: str | None = None):
        super().__init__(detail)
        self.i = i
        self.j = j
        self.b_i = b_i
        self.b_j = b_j


# =========================================================================
# Invariant failures: a theorem-backed runtime assertion did not hold
# =========================================================================


class InvariantViolation(TransvectError):
    pass


class Unclassifiable(InvariantViolation):
    pass


class NoMinimalRepresentative(InvariantViolation):
    pass


class EmptyIntersection(InvariantViolation):
    pass


class SpanMismatch(InvariantViolation):
    pass


class CorollaryViolated(InvariantViolation):
    pass


class NoExtensionFound(InvariantViolation):
    pass


class PredictionMismatch(InvariantViolation):
    pass


class LemmaViolated(InvariantViolation):
    pass
