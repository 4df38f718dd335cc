"""The circle RP^1 of lines through the origin and its subsets of size <= 3.

Lines are encoded by their angle in ``[0, pi)``.  ``CircleSubset`` is a
point of exp_3 of that circle, metrised by the Hausdorff distance built from
the arc-length metric ``circle_dist``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyInput, ZeroVector
from .lattice_core import Vec2

#: default tolerance under which two angles count as the same line
DEDUP_TOL = 1e-9

PI = math.pi


def proj_angle(theta: float) -> float:
    """Reduce a real angle mod pi into ``[0, pi)``."""
    if not math.isfinite(theta):
        raise ValueError(f"non-finite angle: {theta}")
    r = math.fmod(theta, PI)
    if r < 0:
        r += PI
    # fmod of a tiny negative number lands on pi after the shift
    if r >= PI:
        r = 0.0
    return r


def proj_angle_of(v: Vec2) -> float:
    """Angle of the line through the origin spanned by ``v``."""
    if v.x == 0.0 and v.y == 0.0:
        raise ZeroVector("the zero vector spans no line")
    return proj_angle(math.atan2(v.y, v.x))


def circle_dist(a: float, b: float) -> float:
    d = abs(proj_angle(a) - proj_angle(b))
    return min(d, PI - d)


@dataclass(frozen=True, slots=True)
class CircleSubset:
    """Between one and three distinct lines, sorted by angle."""

    points: tuple[float, ...]

    def __post_init__(self):
        if not 1 <= len(self.points) <= 3:
            raise ValueError(f"a subset must have 1..3 points, got {len(self.points)}")
        if any(not 0.0 <= p < PI for p in self.points):
            raise ValueError(f"angles must lie in [0, pi): {self.points}")
        if any(a >= b for a, b in zip(self.points, self.points[1:])):
            raise ValueError(f"angles must be strictly increasing: {self.points}")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def make_subset(angles: Iterable[float], tol: float = DEDUP_TOL) -> CircleSubset:
    """Image of a tuple of 1..3 angles in exp_3 RP^1.

    Angles are reduced mod pi, and points within ``tol`` of each other (with
    wraparound at pi) collapse onto the smallest member of their cluster.
    The result does not depend on the order of ``angles``.
    """
    pts = sorted(proj_angle(a) for a in angles)
    if not pts:
        raise EmptyInput("need at least one angle")
    if len(pts) > 3:
        raise ValueError(f"exp_3 holds at most 3 points, got {len(pts)}")
    kept = [pts[0]]
    for p in pts[1:]:
        if circle_dist(p, kept[-1]) > tol:
            kept.append(p)
    if len(kept) > 1 and circle_dist(kept[-1], kept[0]) <= tol:
        kept.pop()
    return CircleSubset(tuple(kept))


def _directed(s: CircleSubset, t: CircleSubset) -> float:
    # points of a CircleSubset are already reduced, so skip proj_angle
    worst = 0.0
    for a in s.points:
        best = PI
        for b in t.points:
            d = abs(a - b)
            best = min(best, d, PI - d)
        worst = max(worst, best)
    return worst


def hausdorff(s: CircleSubset, t: CircleSubset) -> float:
    return max(_directed(s, t), _directed(t, s))


def delta_embed(x: float) -> CircleSubset:
    """The diagonal circle: a line ``x`` as the singleton ``{x}``."""
    return CircleSubset((proj_angle(x),))


def rotate_subset(s: CircleSubset, phi: float) -> CircleSubset:
    # isometry: no tolerance-based merging, only exact float collisions
    return make_subset((p + phi for p in s.points), tol=0.0)
