"""Linear varieties given as intersections of independent hyperplanes."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BackendMismatch, DependentRows, DimensionMismatch, EmptyInput
from .linalg import (
    DEFAULT_TOL,
    Backend,
    Matrix,
    Scalar,
    Vector,
    gram_det,
    nullspace_basis,
    rank,
    rref,
)


@dataclass(frozen=True)
class LinearVariety:
    """The solution set of ``A x = c``.

    Build through :func:`make_variety`, which checks that the rows of ``A``
    are independent. Direct construction only checks shapes.
    """

    A: Matrix
    c: Vector

    def __post_init__(self):
        if self.A.backend is not self.c.backend:
            raise BackendMismatch("constraint matrix and rhs use different backends")
        if self.A.nrows != len(self.c):
            raise DimensionMismatch(
                f"{self.A.nrows} constraint rows but {len(self.c)} right-hand sides")

    @property
    def n(self) -> int:
        return self.A.ncols

    @property
    def m(self) -> int:
        return self.A.nrows

    @property
    def backend(self) -> Backend:
        return self.A.backend

    def normals(self) -> list[Vector]:
        return self.A.row_vectors()

    def to_float(self) -> LinearVariety:
        return LinearVariety(self.A.to_float(), self.c.to_float())


@dataclass(frozen=True)
class AffinePointMap:
    """``theta -> offset + basis @ theta`` over named parameters."""

    offset: Vector
    basis: Matrix
    param_names: tuple[str, ...]

    def __post_init__(self):
        if self.basis.nrows != len(self.offset):
            raise DimensionMismatch("basis rows do not match the offset dimension")
        if len(self.param_names) != self.basis.ncols:
            raise DimensionMismatch("one name per basis column required")

    @property
    def n(self) -> int:
        return len(self.offset)

    @property
    def p(self) -> int:
        return self.basis.ncols

    @property
    def backend(self) -> Backend:
        return self.offset.backend

    def __call__(self, params) -> Vector:
        if not isinstance(params, Vector):
            params = Vector(params, self.backend)
        if len(params) != self.p:
            raise DimensionMismatch(f"expected {self.p} parameters, got {len(params)}")
        if self.p == 0:
            return self.offset
        return self.offset + self.basis @ params

    def directions(self) -> list[Vector]:
        return self.basis.columns()

    def coefficient_table(self) -> list[tuple[Scalar, ...]]:
        """Per coordinate: the constant term, then one coefficient per parameter."""
        return [(self.offset[i],) + self.basis.rows[i] for i in range(self.n)]


def _as_matrix(A, n: int, backend: Backend | None) -> Matrix:
    if isinstance(A, Matrix):
        if backend is not None and A.backend is not backend:
            A = A.to_float() if backend is Backend.FLOAT else A.to_exact()
        return A
    rows = [list(r) for r in A]
    if not rows:
        raise EmptyInput("a variety needs at least one constraint")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise DimensionMismatch(f"constraint row {i} has length {len(r)}, expected {n}")
    return Matrix(rows, backend)


def make_variety(n: int, A, c, backend: Backend | None = None,
                 tol: float = DEFAULT_TOL) -> LinearVariety:
    """Validate and build the variety ``{x in R^n : A x = c}``.

    An all-zero ``c`` is accepted; the variety is then a subspace.
    """
    A = _as_matrix(A, n, backend)
    if A.nrows == 0:
        raise EmptyInput("a variety needs at least one constraint")
    if A.ncols != n:
        raise DimensionMismatch(f"constraint rows have length {A.ncols}, expected {n}")
    if not isinstance(c, Vector):
        c = Vector(c, A.backend)
    elif c.backend is not A.backend:
        c = c.to_float() if A.backend is Backend.FLOAT else c.to_exact()
    if len(c) != A.nrows:
        raise DimensionMismatch(f"{A.nrows} constraint rows but {len(c)} right-hand sides")
    if A.nrows > n:
        raise DependentRows(f"{A.nrows} constraints in dimension {n} cannot be independent")
    if A.backend is Backend.EXACT:
        if gram_det(A.row_vectors()) == 0:
            raise DependentRows("constraint rows are linearly dependent (Gram determinant 0)")
    elif rank(A, tol) < A.nrows:
        raise DependentRows("constraint rows are numerically dependent")
    return LinearVariety(A, c)


def generic_point(V: LinearVariety, prefix: str = "x",
                  tol: float = DEFAULT_TOL) -> AffinePointMap:
    """Parametrize ``V`` by its free coordinates.

    Pivot coordinates are chosen leftmost-first by Gauss-Jordan elimination,
    so when the leading ``m x m`` block is nonsingular the parameters are the
    trailing coordinates ``x_{m+1}, ..., x_n``. The offset is the point with
    all parameters zero. Parameter names are ``prefix`` plus the 1-based
    coordinate index.
    """
    n = V.n
    augmented = V.A.hstack(Matrix.from_columns([V.c], V.m, V.backend))
    R, pivots = rref(augmented, tol, ncols=n)
    coords = [V.backend.zero] * n
    for r, pc in enumerate(pivots):
        coords[pc] = R.rows[r][n]
    basis = nullspace_basis(V.A, tol)
    free = [j for j in range(n) if j not in pivots]
    return AffinePointMap(
        Vector._raw(tuple(coords), V.backend),
        Matrix.from_columns(basis, n, V.backend),
        tuple(f"{prefix}{j + 1}" for j in free),
    )


def translate(V: LinearVariety, t: Vector) -> LinearVariety:
    """Shift the solution set of ``V`` by ``+t``."""
    if len(t) != V.n:
        raise DimensionMismatch(f"translation of dim {len(t)} in R^{V.n}")
    return LinearVariety(V.A, V.c + V.A @ t)


def contains(V: LinearVariety, p: Vector, tol: float = DEFAULT_TOL) -> tuple[bool, Vector]:
    """Membership test. Returns ``(inside, A p - c)``."""
    if len(p) != V.n:
        raise DimensionMismatch(f"point of dim {len(p)} in R^{V.n}")
    residual = V.A @ p - V.c
    return residual.is_zero(tol), residual


def direction_basis(V: LinearVariety, tol: float = DEFAULT_TOL) -> list[Vector]:
    """Basis of the direction subspace (the nullspace of ``A``)."""
    return nullspace_basis(V.A, tol)

