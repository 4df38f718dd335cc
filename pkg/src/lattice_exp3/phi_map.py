"""The map from compactified plane lattices to exp_3 RP^1, and its inverse.

A non-degenerate lattice is sent to the set of lines joining the vertices of
one of its non-obtuse generating triangles to that triangle's circumcenter.
The three lines are distinct unless the lattice is rectangular, in which
case two of them coincide.  A degenerate lattice (spanned by a single
vector) is sent to the line containing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import NotDistinct
from .exp_circle import DEDUP_TOL, CircleSubset, circle_dist, make_subset, proj_angle, proj_angle_of
from .lattice_core import Basis, Triangle, Vec2, circumcenter, gauss_reduce

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class NonDegenerate:
    basis: Basis


@dataclass(frozen=True, slots=True)
class Degenerate:
    """A degenerate lattice, identified with the line (angle mod pi) containing it."""

    direction: float

    def __post_init__(self):
        object.__setattr__(self, "direction", proj_angle(self.direction))


CompactifiedLattice = Union[NonDegenerate, Degenerate]


def _unit(alpha: float) -> Vec2:
    return Vec2(math.cos(alpha), math.sin(alpha))


def rectangularity_tol(dedup_tol: float = DEDUP_TOL) -> float:
    """Cosine tolerance for ``is_rectangular`` matching line merging in ``phi``.

    For a triangle with angle ``alpha`` at the origin the two lines through
    the far vertices are ``2 asin(cos alpha)`` apart, so they merge under
    ``dedup_tol`` exactly when ``|cos alpha| <= sin(dedup_tol / 2)``.
    """
    return math.sin(dedup_tol / 2.0)


def circumcenter_lines(t: Triangle, tol: float = DEDUP_TOL) -> CircleSubset:
    """Lines from the circumcenter of ``t`` to its three vertices."""
    o = circumcenter(t)
    return make_subset([proj_angle_of(p - o) for p in t.vertices()], tol)


def phi(L: CompactifiedLattice | Basis, tol: float = DEDUP_TOL) -> CircleSubset:
    if isinstance(L, Basis):
        L = NonDegenerate(L)
    if isinstance(L, Degenerate):
        return CircleSubset((L.direction,))
    r = gauss_reduce(L.basis)
    return circumcenter_lines(Triangle(Vec2(0.0, 0.0), r.u, r.v), tol)


def _check_distinct(angles, tol):
    for i in range(len(angles)):
        for j in range(i + 1, len(angles)):
            if circle_dist(angles[i], angles[j]) <= tol:
                raise NotDistinct(f"lines {angles[i]} and {angles[j]} coincide within {tol}")


def lift_nonobtuse(a: float, b: float, c: float, tol: float = DEDUP_TOL) -> Triangle:
    """Inscribed non-obtuse triangle whose vertex lines are ``a, b, c``.

    Each line meets the unit circle in two antipodal points.  Up to a global
    flip exactly one choice of representatives leaves no open half circle
    empty, i.e. keeps the circumcenter (the origin) inside the triangle.
    ``a`` keeps its representative in ``[0, pi)``.
    """
    _check_distinct([a, b, c], tol)
    a, b, c = proj_angle(a), proj_angle(b), proj_angle(c)
    best = None
    for sb in (0.0, math.pi):
        for sc in (0.0, math.pi):
            pts = sorted([a, b + sb, c + sc])
            gap = max(pts[1] - pts[0], pts[2] - pts[1], TWO_PI - pts[2] + pts[0])
            if best is None or gap < best[0]:
                best = (gap, pts)
    return Triangle(*(_unit(p) for p in best[1]))


def rect_from_pair(p: float, q: float, tol: float = DEDUP_TOL) -> Basis:
    """Orthogonal basis of the rectangular lattice whose image is ``{p, q}``."""
    _check_distinct([p, q], tol)
    p1, p2 = sorted((proj_angle(p), proj_angle(q)))
    psi = 0.5 * (p1 + p2)
    delta = 0.5 * (p2 - p1)
    return Basis(_unit(psi) * math.cos(delta), _unit(psi + math.pi / 2) * math.sin(delta))


def phi_inverse(s: CircleSubset, tol: float = DEDUP_TOL) -> CompactifiedLattice:
    pts = s.points
    if len(pts) == 1:
        return Degenerate(pts[0])
    if len(pts) == 2:
        return NonDegenerate(gauss_reduce(rect_from_pair(*pts, tol=tol)))
    t = lift_nonobtuse(*pts, tol=tol)
    return NonDegenerate(gauss_reduce(Basis(t.b - t.a, t.c - t.a)))
