"""Best approximation pair of two linear varieties.

Each variety is parametrized by its generic point, and each is projected on
the other's generic point. A pair of parameter vectors ``(xi, eta)`` is a
closest pair exactly when both projections land back on the generic points:

    P1(G2(eta)) = G1(xi)
    P2(G1(xi))  = G2(eta)

This is an overdetermined but consistent linear system of ``2n`` equations.
Its solution is unique when the direction subspaces meet only at 0. When
they share directions without one containing the other, the closest pairs
form a family and the minimum-norm parameter solution (the Moore-Penrose
solution) is returned. It is computed by row-reducing the system to its
independent equations and taking the min-norm point of that variety.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BackendMismatch,
    CoincidentPoints,
    DimensionMismatch,
    InconsistentSystem,
    NonUniquePair,
)
from .linalg import (
    DEFAULT_TOL,
    Backend,
    Matrix,
    Scalar,
    Vector,
    nullspace_basis,
    rank,
    rref,
)
from .minnorm import min_norm_general, projection_operator
from .variety import LinearVariety, contains, generic_point


@dataclass(frozen=True)
class BestPair:
    s1: Vector
    s2: Vector
    dist_sq: Scalar
    params1: Vector
    params2: Vector
    names1: tuple[str, ...] = ()
    names2: tuple[str, ...] = ()
    # dimension of the set of closest pairs; 0 means the pair is unique
    family_dim: int = 0

    @property
    def distance(self) -> float:
        return math.sqrt(float(self.dist_sq))

    def swapped(self) -> BestPair:
        return BestPair(self.s2, self.s1, self.dist_sq, self.params2, self.params1,
                        self.names2, self.names1, self.family_dim)


@dataclass(frozen=True)
class Sphere:
    center: Vector
    radius_sq: Scalar


@dataclass(frozen=True)
class Hyperplane:
    """``{x : normal . x = offset}``."""

    normal: Vector
    offset: Scalar

    def residual(self, x: Vector) -> Scalar:
        return self.normal.dot(x) - self.offset


@dataclass(frozen=True)
class PairCertificate:
    membership1: Vector
    membership2: Vector
    orthogonality1: tuple[Scalar, ...]
    orthogonality2: tuple[Scalar, ...]
    verdict: bool

    def max_residual(self) -> Scalar:
        values = list(self.membership1) + list(self.membership2)
        values += list(self.orthogonality1) + list(self.orthogonality2)
        return max((abs(v) for v in values), default=self.membership1.backend.zero)


def _check_pair(V1: LinearVariety, V2: LinearVariety) -> None:
    if V1.n != V2.n:
        raise DimensionMismatch(f"varieties live in R^{V1.n} and R^{V2.n}")
    if V1.backend is not V2.backend:
        raise BackendMismatch("varieties use different backends")


def intersection_dim(B1: Matrix, B2: Matrix, tol: float = DEFAULT_TOL) -> int:
    """``dim(span B1 ∩ span B2)`` for matrices with independent columns."""
    if B1.ncols == 0 or B2.ncols == 0:
        return 0
    return B1.ncols + B2.ncols - rank(B1.hstack(B2), tol)


def _min_norm_solution(N: Matrix, r: Vector, tol: float) -> Vector:
    backend = N.backend
    if N.ncols == 0:
        return Vector.zeros(0, backend)
    augmented = N.hstack(Matrix.from_columns([r], N.nrows, backend))
    R, pivots = rref(augmented, tol)
    if N.ncols in pivots:
        raise InconsistentSystem("closest-pair system has no solution")
    if not pivots:
        return Vector.zeros(N.ncols, backend)
    reduced = LinearVariety(
        Matrix._raw(tuple(row[:-1] for row in R.rows), N.ncols, backend),
        Vector._raw(tuple(row[-1] for row in R.rows), backend),
    )
    return min_norm_general(reduced).point


def best_pair(V1: LinearVariety, V2: LinearVariety, tol: float = DEFAULT_TOL,
              require_unique: bool = False) -> BestPair:
    """Closest points ``s1 in V1`` and ``s2 in V2``.

    Raises :class:`NonUniquePair` when the varieties are parallel (one
    direction subspace contains the other, so a whole family of pairs ties
    with no canonical member), or, with ``require_unique``, as soon as the
    closest pair is not unique.
    """
    _check_pair(V1, V2)
    backend = V1.backend
    g1 = generic_point(V1, "x", tol)
    g2 = generic_point(V2, "y", tol)
    B1, B2 = g1.basis, g2.basis
    p1, p2 = g1.p, g2.p

    family = intersection_dim(B1, B2, tol)
    if family and (require_unique or family == min(p1, p2)):
        kind = "parallel" if family == min(p1, p2) else "share directions"
        raise NonUniquePair(
            f"varieties {kind}: closest pairs form a {family}-dimensional family")

    S1 = projection_operator(V1).apply_map(g2)  # S1(eta)
    S2 = projection_operator(V2).apply_map(g1)  # S2(xi)

    # unknowns z = (xi, eta)
    top = (-B1).hstack(S1.basis)
    bottom = S2.basis.hstack(-B2)
    N = top.vstack(bottom)
    r = (g1.offset - S1.offset).concat(g2.offset - S2.offset)
    z = _min_norm_solution(N, r, tol)

    residual = N @ z - r
    if backend is Backend.EXACT:
        consistent = residual.is_zero()
    else:
        scale = max(1.0, float(N.max_abs()), float(r.max_abs()))
        consistent = residual.is_zero(tol * scale)
    if not consistent:
        raise InconsistentSystem(
            f"closest-pair system residual {residual.max_abs()} after solving")

    xi, eta = z[:p1], z[p1:]
    s1, s2 = g1(xi), g2(eta)
    diff = s1 - s2
    return BestPair(s1, s2, diff.norm_sq(), xi, eta, g1.param_names, g2.param_names, family)


def certify_pair(V1: LinearVariety, V2: LinearVariety, s1: Vector, s2: Vector,
                 tol: float = DEFAULT_TOL) -> PairCertificate:
    """Check membership of each point and orthogonality of ``s2 - s1``
    to both direction subspaces."""
    _check_pair(V1, V2)
    if len(s1) != V1.n or len(s2) != V2.n:
        raise DimensionMismatch("points do not match the ambient dimension")
    in1, res1 = contains(V1, s1, tol)
    in2, res2 = contains(V2, s2, tol)
    d = s2 - s1
    orth1 = tuple(d.dot(b) for b in nullspace_basis(V1.A, tol))
    orth2 = tuple(d.dot(b) for b in nullspace_basis(V2.A, tol))
    backend = V1.backend
    orth_ok = all(backend.is_zero(v, tol) for v in orth1 + orth2)
    return PairCertificate(res1, res2, orth1, orth2, in1 and in2 and orth_ok)


def distance(V1: LinearVariety, V2: LinearVariety,
             tol: float = DEFAULT_TOL) -> tuple[Scalar, float]:
    """Squared distance (in the varieties' backend) and its float square root."""
    pair = best_pair(V1, V2, tol)
    return pair.dist_sq, pair.distance


def tangent_sphere(p: BestPair) -> Sphere:
    return Sphere((p.s1 + p.s2) / 2, p.dist_sq / 4)


def supporting_hyperplanes(p: BestPair, tol: float = DEFAULT_TOL) -> tuple[Hyperplane, Hyperplane]:
    """Hyperplanes through ``s1`` and ``s2`` with normal ``s1 - s2``."""
    normal = p.s1 - p.s2
    if normal.is_zero(tol):
        raise CoincidentPoints("s1 = s2: the varieties intersect, no separating slab")
    return Hyperplane(normal, normal.dot(p.s1)), Hyperplane(normal, normal.dot(p.s2))
