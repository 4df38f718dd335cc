"""Perimeter-one non-obtuse triangles and the quotient map onto compactified lattices."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidDegenerate, ObtuseTriangle, OutOfRange
from .exp_circle import proj_angle_of
from .lattice_core import ANGLE_TOL, EPS_LIN, Basis, Triangle, Vec2
from .phi_map import CompactifiedLattice, Degenerate, NonDegenerate

_ORIGIN = Vec2(0.0, 0.0)


@dataclass(frozen=True, slots=True)
class TriangleShape:
    """Triangle with vertices ``0, a, b`` (translation class), perimeter 1.

    The only degenerate shapes are ``a == 0``: one side of length zero with
    both adjacent angles right, the other two sides equal to ``b``.
    """

    a: Vec2
    b: Vec2

    @property
    def is_degenerate(self) -> bool:
        return self.a.x == 0.0 and self.a.y == 0.0

    @property
    def perimeter(self) -> float:
        return self.a.norm() + self.b.norm() + (self.b - self.a).norm()

    def triangle(self) -> Triangle:
        return Triangle(_ORIGIN, self.a, self.b)


def make_shape(a: Vec2, b: Vec2) -> TriangleShape:
    per = a.norm() + b.norm() + (b - a).norm()
    if per == 0.0:
        raise InvalidDegenerate("all sides are zero")
    a, b = a * (1.0 / per), b * (1.0 / per)
    if a.x == 0.0 and a.y == 0.0:
        return TriangleShape(a, b)
    if b.norm() == 0.0 or (b - a).norm() == 0.0 or abs(a.cross(b)) <= EPS_LIN * a.norm() * b.norm():
        raise InvalidDegenerate(f"collinear sides not of the form a = 0: a={a}, b={b}")
    if not Triangle(_ORIGIN, a, b).is_nonobtuse(ANGLE_TOL):
        raise ObtuseTriangle(f"triangle 0, {a}, {b} has an angle above pi/2")
    return TriangleShape(a, b)


def p_map(t: TriangleShape) -> CompactifiedLattice:
    """Lattice generated by two sides of the triangle (mod scale)."""
    if t.is_degenerate:
        return Degenerate(proj_angle_of(t.b))
    return NonDegenerate(Basis(t.a, t.b))


def degenerate_path(direction: float, eps: float) -> TriangleShape:
    """Right triangle with legs ``eps : 1``, long leg along ``direction``.

    As ``eps -> 0`` the short leg shrinks to the zero side of the degenerate
    shape along ``direction``.
    """
    if not 0.0 < eps <= 1.0:
        raise OutOfRange(f"eps must lie in (0, 1], got {eps}")
    long_leg = Vec2(math.cos(direction), math.sin(direction))
    short_leg = long_leg.rotated(math.pi / 2) * eps
    return make_shape(short_leg, long_leg)
