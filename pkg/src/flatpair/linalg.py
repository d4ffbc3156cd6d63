"""Dense vectors and matrices over exact rationals or float64.

Scalars are plain :class:`fractions.Fraction` (exact backend) or ``float``
(float backend). Containers are immutable and carry their backend; combining
containers of different backends raises :class:`BackendMismatch`.

Exact determinants use fraction-free Bareiss elimination on the
denominator-cleared integer matrix. Float determinants and solves use
partially pivoted elimination. Rank decisions in float mode treat a pivot
as zero when its magnitude is at most ``tol`` times the largest entry.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    BackendMismatch,
    DimensionMismatch,
    EmptyInput,
    NotSquare,
    SingularMatrix,
)

Scalar = Union[Fraction, float]

DEFAULT_TOL = 1e-9


class Backend(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"

    def coerce(self, x) -> Scalar:
        """Convert ``x`` into this backend's scalar type.

        Integers and numeric strings are neutral and accepted by both
        backends. A float offered to the exact backend, or a Fraction
        offered to the float backend, is a mixing error.
        """
        if isinstance(x, bool):
            raise BackendMismatch(f"boolean {x!r} is not a scalar")
        if self is Backend.EXACT:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, Rational):
                return Fraction(x.numerator, x.denominator)
            if isinstance(x, str):
                return _parse_fraction(x)
        else:
            if isinstance(x, float):
                return float(x)
            if isinstance(x, int):
                return float(x)
            if isinstance(x, str):
                return float(_parse_fraction(x))
        raise BackendMismatch(
            f"{type(x).__name__} value {x!r} cannot enter the {self.value} backend"
        )

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self is Backend.EXACT else 0.0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self is Backend.EXACT else 1.0

    def is_zero(self, x: Scalar, tol: float = 0.0) -> bool:
        if self is Backend.EXACT:
            return x == 0
        return abs(x) <= tol


def _parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {s!r}") from None


def infer_backend(values: Iterable) -> Backend:
    seen_exact = seen_float = False
    for v in values:
        if isinstance(v, float):
            seen_float = True
        elif isinstance(v, Fraction):
            seen_exact = True
    if seen_exact and seen_float:
        raise BackendMismatch("mixed Fraction and float entries")
    return Backend.FLOAT if seen_float else Backend.EXACT


def _same_backend(*items) -> Backend:
    backend = items[0].backend
    for item in items[1:]:
        if item.backend is not backend:
            raise BackendMismatch(
                f"cannot combine {backend.value} and {item.backend.value} values"
            )
    return backend


class Vector:
    """Immutable coordinate vector."""

    __slots__ = ("coords", "backend")

    def __init__(self, values: Iterable, backend: Backend | None = None):
        values = tuple(values)
        if backend is None:
            backend = infer_backend(values)
        object.__setattr__(self, "coords", tuple(backend.coerce(v) for v in values))
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @classmethod
    def zeros(cls, n: int, backend: Backend = Backend.EXACT) -> Vector:
        return cls._raw((backend.zero,) * n, backend)

    @classmethod
    def unit(cls, n: int, i: int, backend: Backend = Backend.EXACT) -> Vector:
        coords = [backend.zero] * n
        coords[i] = backend.one
        return cls._raw(tuple(coords), backend)

    @classmethod
    def _raw(cls, coords: tuple, backend: Backend) -> Vector:
        v = object.__new__(cls)
        object.__setattr__(v, "coords", coords)
        object.__setattr__(v, "backend", backend)
        return v

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.coords)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Vector._raw(self.coords[i], self.backend)
        return self.coords[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.backend is other.backend and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.backend, self.coords))

    def __repr__(self) -> str:
        return f"Vector([{', '.join(str(x) for x in self.coords)}], {self.backend.value})"

    def _check(self, other: Vector) -> None:
        _same_backend(self, other)
        if len(other) != len(self):
            raise DimensionMismatch(f"dimensions {len(self)} and {len(other)} differ")

    def __add__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector._raw(tuple(a + b for a, b in zip(self.coords, other.coords)), self.backend)

    def __sub__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector._raw(tuple(a - b for a, b in zip(self.coords, other.coords)), self.backend)

    def __neg__(self) -> Vector:
        return Vector._raw(tuple(-a for a in self.coords), self.backend)

    def __mul__(self, k) -> Vector:
        if isinstance(k, (Vector, Matrix)):
            return NotImplemented
        k = self.backend.coerce(k)
        return Vector._raw(tuple(a * k for a in self.coords), self.backend)

    __rmul__ = __mul__

    def __truediv__(self, k) -> Vector:
        k = self.backend.coerce(k)
        return Vector._raw(tuple(a / k for a in self.coords), self.backend)

    def dot(self, other: Vector) -> Scalar:
        return dot(self, other)

    def norm_sq(self) -> Scalar:
        return sum((a * a for a in self.coords), self.backend.zero)

    def max_abs(self) -> Scalar:
        return max((abs(a) for a in self.coords), default=self.backend.zero)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(self.backend.is_zero(a, tol) for a in self.coords)

    def to_float(self) -> Vector:
        return Vector._raw(tuple(float(a) for a in self.coords), Backend.FLOAT)

    def to_exact(self) -> Vector:
        """Exact image of the coordinates (float values are converted losslessly)."""
        return Vector._raw(tuple(Fraction(a) for a in self.coords), Backend.EXACT)

    def concat(self, other: Vector) -> Vector:
        _same_backend(self, other)
        return Vector._raw(self.coords + other.coords, self.backend)


class Matrix:
    """Immutable row-major matrix. Zero columns are allowed (empty bases)."""

    __slots__ = ("rows", "ncols", "backend")

    def __init__(self, rows: Iterable[Iterable], backend: Backend | None = None,
                 ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise EmptyInput("matrix without rows needs an explicit column count")
            ncols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has {len(r)} entries, expected {ncols}")
        if backend is None:
            backend = infer_backend(x for r in rows for x in r)
        object.__setattr__(self, "rows", tuple(tuple(backend.coerce(x) for x in r) for r in rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: tuple, ncols: int, backend: Backend) -> Matrix:
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "backend", backend)
        return m

    @classmethod
    def identity(cls, n: int, backend: Backend = Backend.EXACT) -> Matrix:
        z, o = backend.zero, backend.one
        return cls._raw(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)),
                        n, backend)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, backend: Backend = Backend.EXACT) -> Matrix:
        return cls._raw(((backend.zero,) * ncols,) * nrows, ncols, backend)

    @classmethod
    def from_rows(cls, vectors: Sequence[Vector], ncols: int | None = None) -> Matrix:
        if not vectors:
            if ncols is None:
                raise EmptyInput("no rows given")
            return cls._raw((), ncols, Backend.EXACT)
        backend = _same_backend(*vectors)
        width = len(vectors[0])
        if any(len(v) != width for v in vectors):
            raise DimensionMismatch("rows of unequal length")
        return cls._raw(tuple(v.coords for v in vectors), width, backend)

    @classmethod
    def from_columns(cls, vectors: Sequence[Vector], nrows: int,
                     backend: Backend = Backend.EXACT) -> Matrix:
        if vectors:
            backend = _same_backend(*vectors)
            if any(len(v) != nrows for v in vectors):
                raise DimensionMismatch("columns of unequal length")
        rows = tuple(tuple(v.coords[i] for v in vectors) for i in range(nrows))
        return cls._raw(rows, len(vectors), backend)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.backend is other.backend and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.backend, self.ncols, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols} [{body}], {self.backend.value})"

    def row(self, i: int) -> Vector:
        return Vector._raw(self.rows[i], self.backend)

    def col(self, j: int) -> Vector:
        return Vector._raw(tuple(r[j] for r in self.rows), self.backend)

    def row_vectors(self) -> list[Vector]:
        return [self.row(i) for i in range(self.nrows)]

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> Matrix:
        if not self.rows:
            return Matrix._raw(((),) * self.ncols, 0, self.backend)
        return Matrix._raw(tuple(zip(*self.rows)), self.nrows, self.backend)

    def __matmul__(self, other):
        if isinstance(other, Vector):
            _same_backend(self, other)
            if len(other) != self.ncols:
                raise DimensionMismatch(
                    f"matrix with {self.ncols} columns applied to vector of dim {len(other)}")
            zero = self.backend.zero
            return Vector._raw(
                tuple(sum((a * b for a, b in zip(r, other.coords)), zero) for r in self.rows),
                self.backend)
        if isinstance(other, Matrix):
            _same_backend(self, other)
            if other.nrows != self.ncols:
                raise DimensionMismatch(f"shapes {self.shape} and {other.shape} do not chain")
            zero = self.backend.zero
            cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
            rows = tuple(tuple(sum((a * b for a, b in zip(r, c)), zero) for c in cols)
                         for r in self.rows)
            return Matrix._raw(rows, other.ncols, self.backend)
        return NotImplemented

    def _check(self, other: Matrix) -> None:
        _same_backend(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)),
                           self.ncols, self.backend)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)),
                           self.ncols, self.backend)

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows),
                           self.ncols, self.backend)

    def __mul__(self, k) -> Matrix:
        if isinstance(k, (Vector, Matrix)):
            return NotImplemented
        k = self.backend.coerce(k)
        return Matrix._raw(tuple(tuple(a * k for a in r) for r in self.rows),
                           self.ncols, self.backend)

    __rmul__ = __mul__

    def hstack(self, other: Matrix) -> Matrix:
        _same_backend(self, other)
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack needs equal row counts")
        return Matrix._raw(tuple(r + s for r, s in zip(self.rows, other.rows)),
                           self.ncols + other.ncols, self.backend)

    def vstack(self, other: Matrix) -> Matrix:
        _same_backend(self, other)
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack needs equal column counts")
        return Matrix._raw(self.rows + other.rows, self.ncols, self.backend)

    def max_abs(self) -> Scalar:
        return max((abs(x) for r in self.rows for x in r), default=self.backend.zero)

    def is_symmetric(self, tol: float = 0.0) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(self.backend.is_zero(self.rows[i][j] - self.rows[j][i], tol)
                   for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(self.backend.is_zero(x, tol) for r in self.rows for x in r)

    def to_float(self) -> Matrix:
        return Matrix._raw(tuple(tuple(float(x) for x in r) for r in self.rows),
                           self.ncols, Backend.FLOAT)

    def to_exact(self) -> Matrix:
        return Matrix._raw(tuple(tuple(Fraction(x) for x in r) for r in self.rows),
                           self.ncols, Backend.EXACT)


def dot(u: Vector, v: Vector) -> Scalar:
    u._check(v)
    return sum((a * b for a, b in zip(u.coords, v.coords)), u.backend.zero)


def gram_matrix(vs: Sequence[Vector]) -> Matrix:
    if not vs:
        raise EmptyInput("Gram matrix of an empty list")
    backend = _same_backend(*vs)
    n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise DimensionMismatch("Gram vectors of unequal dimension")
    r = len(vs)
    entries = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            entries[i][j] = entries[j][i] = dot(vs[i], vs[j])
    return Matrix._raw(tuple(tuple(row) for row in entries), r, backend)


def gram_det(vs: Sequence[Vector]) -> Scalar:
    return det(gram_matrix(vs))


def det(M: Matrix) -> Scalar:
    if M.nrows != M.ncols:
        raise NotSquare(f"determinant of a {M.nrows}x{M.ncols} matrix")
    if M.backend is Backend.EXACT:
        return _det_bareiss(M.rows)
    return _det_lu(M.rows)


def _det_bareiss(rows) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1
    work = []
    for r in rows:
        mult = math.lcm(*(x.denominator for x in r))
        scale *= mult
        work.append([x.numerator * (mult // x.denominator) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            for i in range(k + 1, n):
                if work[i][k] != 0:
                    work[k], work[i] = work[i], work[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = work[k][k]
        for i in range(k + 1, n):
            wi, wk = work[i], work[k]
            f = wi[k]
            for j in range(k + 1, n):
                wi[j] = (wi[j] * pivot - f * wk[j]) // prev
            wi[k] = 0
        prev = pivot
    return Fraction(sign * work[n - 1][n - 1], scale)


def _det_lu(rows) -> float:
    n = len(rows)
    work = [list(r) for r in rows]
    result = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(work[i][k]))
        if work[p][k] == 0.0:
            return 0.0
        if p != k:
            work[k], work[p] = work[p], work[k]
            result = -result
        pivot = work[k][k]
        result *= pivot
        for i in range(k + 1, n):
            f = work[i][k] / pivot
            if f:
                wi, wk = work[i], work[k]
                for j in range(k + 1, n):
                    wi[j] -= f * wk[j]
    return result


def solve_square(M: Matrix, rhs: Vector, tol: float = DEFAULT_TOL) -> Vector:
    """Solve ``M x = rhs`` for square nonsingular ``M``.

    Exact mode is exact. Float mode raises :class:`SingularMatrix` when a
    pivot falls to ``tol`` times the largest entry of ``M`` or below.
    """
    if M.nrows != M.ncols:
        raise NotSquare(f"cannot solve with a {M.nrows}x{M.ncols} matrix")
    backend = _same_backend(M, rhs)
    n = M.nrows
    if len(rhs) != n:
        raise DimensionMismatch(f"rhs of dim {len(rhs)} for a {n}x{n} system")
    work = [list(r) + [b] for r, b in zip(M.rows, rhs.coords)]
    exact = backend is Backend.EXACT
    threshold = 0 if exact else tol * float(M.max_abs())
    for k in range(n):
        if exact:
            p = next((i for i in range(k, n) if work[i][k] != 0), None)
        else:
            p = max(range(k, n), key=lambda i: abs(work[i][k]))
            if abs(work[p][k]) <= threshold:
                p = None
        if p is None:
            raise SingularMatrix(f"matrix is singular (column {k} has no pivot)")
        work[k], work[p] = work[p], work[k]
        wk = work[k]
        pivot = wk[k]
        for i in range(n):
            if i == k:
                continue
            wi = work[i]
            f = wi[k] / pivot
            if f:
                for j in range(k, n + 1):
                    wi[j] -= f * wk[j]
    return Vector._raw(tuple(work[i][n] / work[i][i] for i in range(n)), backend)


def minor(M: Matrix, i: int, j: int) -> Matrix:
    rows = tuple(r[:j] + r[j + 1:] for k, r in enumerate(M.rows) if k != i)
    return Matrix._raw(rows, M.ncols - 1, M.backend)


def cofactor_last_row(M: Matrix) -> Vector:
    """Signed cofactors of the bottom row of a square matrix.

    For any row ``r``, ``sum(r[j] * C[j])`` is the determinant of ``M``
    with its last row replaced by ``r``.
    """
    k = M.nrows
    if k != M.ncols or k == 0:
        raise NotSquare(f"cofactors of a {M.nrows}x{M.ncols} matrix")
    out = []
    for j in range(k):
        d = det(minor(M, k - 1, j))
        out.append(d if (k - 1 + j) % 2 == 0 else -d)
    return Vector._raw(tuple(out), M.backend)


def rref(M: Matrix, tol: float = DEFAULT_TOL, ncols: int | None = None):
    """Reduced row echelon form with leftmost pivot columns.

    Only the first ``ncols`` columns (default: all) are eligible as pivot
    columns, which lets callers reduce an augmented matrix without pivoting
    on the right-hand side. Returns ``(R, pivots)`` where ``R`` contains
    only the ``rank`` nonzero rows.
    """
    backend = M.backend
    exact = backend is Backend.EXACT
    width = M.ncols if ncols is None else ncols
    work = [list(r) for r in M.rows]
    threshold = 0 if exact else tol * float(M.max_abs())
    pivots = []
    r = 0
    for c in range(width):
        if r == len(work):
            break
        if exact:
            p = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        else:
            p = max(range(r, len(work)), key=lambda i: abs(work[i][c]))
            if abs(work[p][c]) <= threshold:
                p = None
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        wr = work[r]
        pivot = wr[c]
        wr[:] = [x / pivot for x in wr]
        wr[c] = backend.one
        for i in range(len(work)):
            if i != r:
                wi = work[i]
                f = wi[c]
                if f:
                    for j in range(M.ncols):
                        wi[j] -= f * wr[j]
                    wi[c] = backend.zero
        pivots.append(c)
        r += 1
    return Matrix._raw(tuple(tuple(w) for w in work[:r]), M.ncols, backend), tuple(pivots)


def rank(M: Matrix, tol: float = DEFAULT_TOL) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return len(rref(M, tol)[1])


def nullspace_basis(A: Matrix, tol: float = DEFAULT_TOL) -> list[Vector]:
    """Basis of ``{x : A x = 0}``, one vector per free column in ascending order.

    Each basis vector has a 1 at its free column, 0 at the other free
    columns, and the negated reduced-row entries at the pivot columns.
    """
    n = A.ncols
    backend = A.backend
    if A.nrows == 0:
        return [Vector.unit(n, j, backend) for j in range(n)]
    R, pivots = rref(A, tol)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        coords = [backend.zero] * n
        coords[f] = backend.one
        for r, pc in enumerate(pivots):
            coords[pc] = -R.rows[r][f]
        basis.append(Vector._raw(tuple(coords), backend))
    return basis
