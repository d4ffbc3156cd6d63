"""Closest points of linear varieties, projections onto them, and best
approximation pairs, computed through Gram-determinant closed forms over
exact rationals or float64."""

__version__ = "0.1.0"

from .bestpair import (
    BestPair,
    Hyperplane,
    PairCertificate,
    Sphere,
    best_pair,
    certify_pair,
    distance,
    supporting_hyperplanes,
    tangent_sphere,
)
from .errors import (
    AllZeroRhs,
    BackendMismatch,
    CoincidentPoints,
    DegenerateGeometry,
    DependentRows,
    DependentVectors,
    DimensionMismatch,
    EmptyInput,
    FlatpairError,
    InconsistentSystem,
    InvalidInput,
    NonUniquePair,
    NotSquare,
    ProblemFormatError,
    ProportionalVectors,
    SingularMatrix,
)
from .linalg import (
    DEFAULT_TOL,
    Backend,
    Matrix,
    Vector,
    cofactor_last_row,
    det,
    dot,
    gram_det,
    gram_matrix,
    nullspace_basis,
    rank,
    rref,
    solve_square,
)
from .minnorm import (
    AffineOperator,
    ProjectionResult,
    beesack_transform,
    min_norm_general,
    min_norm_sq,
    min_norm_unit_rhs,
    mitrinovic_case,
    project_point,
    projection_operator,
)
from .variety import (
    AffinePointMap,
    LinearVariety,
    contains,
    generic_point,
    make_variety,
    translate,
)
