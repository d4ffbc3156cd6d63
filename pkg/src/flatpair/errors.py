"""Exception hierarchy.

Every error carries the CLI exit code of its family: ``InvalidInput``
subclasses map to 2, ``DegenerateGeometry`` subclasses map to 3.
"""


class FlatpairError(Exception):
    exit_code = 1


class InvalidInput(FlatpairError, ValueError):
    exit_code = 2


class DimensionMismatch(InvalidInput):
    pass


class EmptyInput(InvalidInput):
    pass


class BackendMismatch(InvalidInput, TypeError):
    """Exact and float scalars were combined in one computation."""


class NotSquare(InvalidInput):
    pass


class DependentVectors(InvalidInput):
    pass


class DependentRows(DependentVectors):
    pass


class ProportionalVectors(DependentVectors):
    pass


class AllZeroRhs(InvalidInput):
    pass


class ProblemFormatError(InvalidInput):
    pass


class DegenerateGeometry(FlatpairError):
    exit_code = 3


class SingularMatrix(DegenerateGeometry, ArithmeticError):
    pass


class NonUniquePair(DegenerateGeometry):
    pass


class InconsistentSystem(DegenerateGeometry):
    pass


class CoincidentPoints(DegenerateGeometry):
    pass
