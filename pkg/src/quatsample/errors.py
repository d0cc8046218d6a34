"""Exception hierarchy.

Two families: :class:`DomainError` for bad or unsupported input (the CLI maps
these to exit code 1) and :class:`InternalAssertion` for results that
contradict a guaranteed mathematical property, which signals a bug or a
numerical breakdown (exit code 2).
"""


class QuatSampleError(Exception):
    """Base class for every error raised by this package."""


class DomainError(QuatSampleError):
    pass


class InternalAssertion(QuatSampleError):
    pass


class QuaternionZeroDivision(DomainError, ZeroDivisionError):
    pass


class DimensionMismatch(DomainError, ValueError):
    pass


class ParseError(DomainError, ValueError):
    def __init__(self, message, column=None, text=None):
        self.column = column
        self.text = text
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class DegenerateInput(DomainError, ValueError):
    pass


class RootSolverFailure(DomainError):
    pass


class NotSymmetric(DomainError, ValueError):
    pass


class NotNormal(DomainError, ValueError):
    pass


class NotTridiagonalSymmetric(DomainError, ValueError):
    pass


class ZeroOffDiagonal(DomainError, ValueError):
    pass


class NotSpherical(DomainError, ValueError):
    pass


class NotInOrbit(DomainError, ValueError):
    pass


class DependentInput(DomainError, ValueError):
    def __init__(self, index, message=None):
        # 1-based position of the offending vector
        self.index = index
        super().__init__(message or f"vector {index} is right-H-dependent on its predecessors")


class EigenSolverFailure(DomainError):
    pass


class OrbitSelectionFailure(DomainError):
    pass


class RecoveryFailure(InternalAssertion):
    pass


class FirstEntryZero(InternalAssertion):
    pass


class SpectrumMismatch(InternalAssertion):
    pass


class InvalidSampleSet(DomainError, ValueError):
    pass
