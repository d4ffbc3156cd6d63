"""Closest points of a linear variety via Gram-determinant quotients.

The kernel is the equality case of the Fan-Todd bound: among all ``x`` with
``a_i . x = 0`` (``i < m``) and ``a_m . x = 1``, the shortest is

    s = sum_j C_j a_j / G(a_1, ..., a_m)

where ``C_j`` are the cofactors of the last row of the Gram matrix, and
``|s|^2 = G(a_1, ..., a_{m-1}) / G(a_1, ..., a_m)``. A general right-hand
side is reduced to that form by the Beesack substitution, and an external
point is handled by translating it to the origin first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    AllZeroRhs,
    DependentRows,
    DependentVectors,
    DimensionMismatch,
    ProportionalVectors,
)
from .linalg import (
    Backend,
    Matrix,
    Scalar,
    Vector,
    cofactor_last_row,
    det,
    gram_matrix,
)
from .variety import AffinePointMap, LinearVariety, translate

# Float Gram determinants at or below GRAM_RTOL * prod(|a_i|^2) count as zero.
GRAM_RTOL = 1e-12


@dataclass(frozen=True)
class ProjectionResult:
    point: Vector
    dist_sq: Scalar


@dataclass(frozen=True)
class AffineOperator:
    """The affine map ``q -> M q + t``."""

    M: Matrix
    t: Vector

    def __call__(self, q: Vector) -> Vector:
        return self.M @ q + self.t

    def apply_map(self, pmap: AffinePointMap) -> AffinePointMap:
        """Compose with a parametrized point; the parameters carry over."""
        return AffinePointMap(self(pmap.offset), self.M @ pmap.basis, pmap.param_names)


def _checked_gram_det(vs: Sequence[Vector], error=DependentVectors) -> Scalar:
    g = det(gram_matrix(vs))
    backend = vs[0].backend
    if backend is Backend.EXACT:
        if g == 0:
            raise error("vectors are linearly dependent (Gram determinant 0)")
    else:
        scale = 1.0
        for v in vs:
            scale *= v.norm_sq()
        if g <= GRAM_RTOL * scale:
            raise error(f"vectors are numerically dependent (Gram determinant {g:.3e})")
    return g


def min_norm_unit_rhs(vectors: Sequence[Vector]) -> Vector:
    """Shortest ``x`` with ``a_i . x = 0`` for ``i < m`` and ``a_m . x = 1``.

    The numerator determinant (Gram rows on top, the vectors themselves as
    the last row) is expanded along its last row, so the coefficient of
    ``a_j`` is the last-row cofactor ``C_j`` of the Gram matrix. For a
    single vector this reduces to ``a / |a|^2``.
    """
    if not vectors:
        raise DependentVectors("need at least one constraint vector")
    G = gram_matrix(vectors)
    g = _checked_gram_det(vectors)
    cof = cofactor_last_row(G)
    backend = vectors[0].backend
    s = Vector.zeros(len(vectors[0]), backend)
    for c_j, a_j in zip(cof, vectors):
        s = s + a_j * c_j
    return s / g


def min_norm_sq(vectors: Sequence[Vector]) -> Scalar:
    """``G(a_1..a_{m-1}) / G(a_1..a_m)``; ``1 / |a|^2`` when ``m = 1``."""
    if not vectors:
        raise DependentVectors("need at least one constraint vector")
    g = _checked_gram_det(vectors)
    head = vectors[:-1]
    g_head = det(gram_matrix(head)) if head else vectors[0].backend.one
    return g_head / g


def beesack_pivot(c: Vector) -> int:
    """Index of the constraint moved last before the substitution.

    Exact mode keeps the last nonzero entry, so a system whose final rhs is
    nonzero is used in its given order. Float mode takes the entry of
    largest magnitude, which bounds every ratio ``c_i / c_m`` by 1.
    """
    if c.is_zero():
        raise AllZeroRhs("every right-hand side is zero; the variety is a subspace")
    if c.backend is Backend.EXACT:
        return max(i for i, x in enumerate(c) if x != 0)
    return max(range(len(c)), key=lambda i: (abs(c[i]), i))


def beesack_transform(A: Matrix, c: Vector) -> list[Vector]:
    """Rewrite ``A x = c`` as ``a'_i . x = 0 (i < m)``, ``a'_m . x = 1``.

    With the pivot constraint moved last: ``a'_i = a_i - (c_i / c_m) a_m``
    and ``a'_m = a_m / c_m``. The new system has the same solution set.
    """
    if A.nrows != len(c):
        raise DimensionMismatch(f"{A.nrows} rows but {len(c)} right-hand sides")
    k = beesack_pivot(c)
    rows = A.row_vectors()
    a_m, c_m = rows[k], c[k]
    out = [rows[i] - a_m * (c[i] / c_m) for i in range(len(rows)) if i != k]
    out.append(a_m / c_m)
    _checked_gram_det(out)
    return out


def min_norm_general(V: LinearVariety) -> ProjectionResult:
    """Point of ``V`` closest to the origin, with its squared norm.

    The squared norm is the Gram quotient of the transformed vectors, not
    ``s . s``; the two agree identically in exact arithmetic.
    """
    backend = V.backend
    if V.c.is_zero():
        return ProjectionResult(Vector.zeros(V.n, backend), backend.zero)
    try:
        transformed = beesack_transform(V.A, V.c)
        return ProjectionResult(min_norm_unit_rhs(transformed), min_norm_sq(transformed))
    except DependentVectors as exc:
        raise DependentRows(str(exc)) from None


def project_point(V: LinearVariety, q: Vector) -> ProjectionResult:
    """Orthogonal projection of ``q`` onto ``V`` and the squared distance."""
    if len(q) != V.n:
        raise DimensionMismatch(f"point of dim {len(q)} in R^{V.n}")
    shifted = translate(V, -q)
    if shifted.c.is_zero():
        return ProjectionResult(q, V.backend.zero)
    foot = min_norm_general(shifted)
    return ProjectionResult(foot.point + q, foot.dist_sq)


def projection_operator(V: LinearVariety) -> AffineOperator:
    """``(M, t)`` with ``project_point(V, q).point == M q + t`` for all ``q``.

    Built from the projections of the origin and of each unit vector.
    """
    n, backend = V.n, V.backend
    t = project_point(V, Vector.zeros(n, backend)).point
    columns = [project_point(V, Vector.unit(n, i, backend)).point - t for i in range(n)]
    return AffineOperator(Matrix.from_columns(columns, n, backend), t)


def mitrinovic_case(a: Vector, b: Vector) -> Vector:
    """Shortest ``x`` with ``a . x = 0`` and ``b . x = 1``, componentwise."""
    a._check(b)
    saa = a.norm_sq()
    sbb = b.norm_sq()
    sab = a.dot(b)
    denom = saa * sbb - sab * sab
    if a.backend is Backend.EXACT:
        degenerate = denom == 0
    else:
        degenerate = denom <= GRAM_RTOL * saa * sbb
    if degenerate:
        raise ProportionalVectors("a and b are proportional")
    return Vector._raw(tuple((bk * saa - ak * sab) / denom for ak, bk in zip(a, b)),
                       a.backend)
