"""Plane lattices given by bases: reduction, rectangularity, generating triangles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import CollinearVertices, DegenerateInput

#: relative threshold |u x v| <= EPS_LIN * |u| |v| for linear dependence
EPS_LIN = 1e-12
#: an angle "does not exceed pi/2" when <B-A, C-A> >= -ANGLE_TOL |B-A| |C-A|
ANGLE_TOL = 1e-9
#: default cosine tolerance for rectangularity, matched to ANGLE_TOL
RECT_TOL = 1e-9

_MAX_REDUCTION_STEPS = 10_000
_TIE_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite vector component: ({self.x}, {self.y})")
        # normalise ints / numpy scalars to plain floats
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Vec2:
        return Vec2(-self.x, -self.y)

    def __mul__(self, s: float) -> Vec2:
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.x
        yield self.y

    def dot(self, other: Vec2) -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Vec2) -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def rotated(self, theta: float) -> Vec2:
        c, s = math.cos(theta), math.sin(theta)
        return Vec2(c * self.x - s * self.y, s * self.x + c * self.y)


def _independent(u: Vec2, v: Vec2) -> bool:
    return abs(u.cross(v)) > EPS_LIN * u.norm() * v.norm()


@dataclass(frozen=True, slots=True)
class Basis:
    """Ordered pair of linearly independent plane vectors."""

    u: Vec2
    v: Vec2

    def __post_init__(self):
        if not _independent(self.u, self.v):
            raise DegenerateInput(f"basis vectors are linearly dependent: {self.u}, {self.v}")

    @classmethod
    def from_coords(cls, ux, uy, vx, vy) -> Basis:
        return cls(Vec2(ux, uy), Vec2(vx, vy))

    def matrix(self) -> np.ndarray:
        """2x2 array with the basis vectors as columns."""
        return np.array([[self.u.x, self.v.x], [self.u.y, self.v.y]])

    def transform(self, U) -> Basis:
        """Basis with columns ``B @ U`` for an integer matrix ``U``."""
        (a, b), (c, d) = np.asarray(U).tolist()
        return Basis(self.u * a + self.v * c, self.u * b + self.v * d)

    def scaled(self, s: float) -> Basis:
        return Basis(self.u * s, self.v * s)

    def rotated(self, theta: float) -> Basis:
        return Basis(self.u.rotated(theta), self.v.rotated(theta))

    def as_lists(self) -> list[list[float]]:
        return [[self.u.x, self.u.y], [self.v.x, self.v.y]]


@dataclass(frozen=True, slots=True)
class ReducedBasis(Basis):
    """Gauss-Lagrange reduced basis.

    ``|u| <= |v|``, ``0 <= <u, v> <= |u|^2 / 2`` and ``u`` points into the
    upper half plane (angle of ``u`` in ``[0, pi)``).
    """


@dataclass(frozen=True, slots=True)
class Triangle:
    a: Vec2
    b: Vec2
    c: Vec2

    def vertices(self) -> tuple[Vec2, Vec2, Vec2]:
        return (self.a, self.b, self.c)

    def is_nonobtuse(self, tol: float = ANGLE_TOL) -> bool:
        verts = self.vertices()
        for i in range(3):
            p, q, r = verts[i], verts[(i + 1) % 3], verts[(i + 2) % 3]
            e1, e2 = q - p, r - p
            if e1.dot(e2) < -tol * e1.norm() * e2.norm():
                return False
        return True


def _upper(u: Vec2) -> Vec2:
    if u.y < 0 or (u.y == 0 and u.x < 0):
        return -u
    return u


def _shorter(v: Vec2, u: Vec2) -> bool:
    """Strictly shorter beyond rounding; equal lengths keep their order."""
    return v.dot(v) < u.dot(u) * (1.0 - _TIE_TOL)


def gauss_reduce(b: Basis) -> ReducedBasis:
    """Lagrange reduction of a plane basis.

    The result spans the same lattice, has ``|u|`` equal to the lattice
    minimum and satisfies ``0 <= <u, v> <= |u|^2/2``.  Ties are broken
    deterministically: vectors are swapped only when the length drops by
    more than a relative ``1e-12``, and ``v`` is negated so that ``<u, v> >= 0``.
    """
    u, v = b.u, b.v
    if _shorter(v, u):
        u, v = v, u
    for _ in range(_MAX_REDUCTION_STEPS):
        ratio = u.dot(v) / u.dot(u)
        # |<u,v>| = |u|^2/2 up to rounding is already reduced; stepping would cycle
        if abs(ratio) <= 0.5 + _TIE_TOL:
            break
        mu = round(ratio)
        v = v - u * mu
        if _shorter(v, u):
            u, v = v, u
    else:  # pragma: no cover - only reachable for pathological float input
        raise DegenerateInput("lattice reduction did not terminate")
    u = _upper(u)
    if u.dot(v) < 0:
        v = -v
    return ReducedBasis(u, v)


def is_rectangular(b: Basis, tol: float = RECT_TOL) -> bool:
    r = gauss_reduce(b)
    return abs(r.u.dot(r.v)) <= tol * r.u.norm() * r.v.norm()


def circumcenter(t: Triangle) -> Vec2:
    b = t.b - t.a
    c = t.c - t.a
    d = 2.0 * b.cross(c)
    if abs(d) <= 2.0 * EPS_LIN * b.norm() * c.norm() or d == 0.0:
        raise CollinearVertices(f"collinear vertices: {t}")
    bb, cc = b.dot(b), c.dot(c)
    ox = (c.y * bb - b.y * cc) / d
    oy = (b.x * cc - c.x * bb) / d
    return Vec2(t.a.x + ox, t.a.y + oy)


def enumerate_generator_triangles(b: Basis, tol: float = ANGLE_TOL) -> list[Triangle]:
    """All origin-anchored non-obtuse triangles whose sides generate the lattice.

    A rectangular lattice has 12 of them, every other lattice 6.  Side pairs
    are searched among ``m u + n v`` with ``|m|, |n| <= 2`` on the reduced
    basis, which is exhaustive since such triangles only use the shortest
    lattice vectors.  Triangles are deduplicated by their vertex sets in
    integer coordinates.
    """
    r = gauss_reduce(b)
    coeffs = [(m, n) for m, n in product(range(-2, 3), repeat=2) if (m, n) != (0, 0)]
    seen: dict[frozenset, Triangle] = {}
    for (m1, n1), (m2, n2) in product(coeffs, repeat=2):
        if abs(m1 * n2 - n1 * m2) != 1:
            continue
        p = (m1, n1)
        q = (m1 + m2, n1 + n2)
        key = frozenset([(0, 0), p, q])
        if key in seen:
            continue
        a = r.u * m1 + r.v * n1
        c = r.u * q[0] + r.v * q[1]
        tri = Triangle(Vec2(0.0, 0.0), a, c)
        if tri.is_nonobtuse(tol):
            seen[key] = tri
    return [seen[k] for k in sorted(seen, key=lambda k: sorted(k))]


def lattice_eq_mod_scale(a: Basis, b: Basis, tol: float = 1e-9, scale: bool = True) -> bool:
    """Do ``a`` and ``b`` span the same lattice, up to a positive scalar?

    With ``scale=False`` the lattices must agree exactly (``lambda = 1``).
    """
    ra, rb = gauss_reduce(a), gauss_reduce(b)
    if scale:
        rb = ReducedBasis(*(w * (ra.u.norm() / rb.u.norm()) for w in (rb.u, rb.v)))
    M = np.linalg.solve(ra.matrix(), rb.matrix())
    R = np.rint(M)
    if np.max(np.abs(M - R)) > tol:
        return False
    return abs(round(np.linalg.det(R))) == 1


def random_unimodular(seed: int, bound: int = 3) -> np.ndarray:
    """Seeded random integer matrix with determinant +-1 and entries in [-bound, bound].

    Built as a product of elementary shears, rejecting shears that would
    leave the entry bound; ``seed`` values that draw zero shear steps and no
    reflection give the identity.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = np.random.default_rng(seed)
    M = np.eye(2, dtype=np.int64)
    for _ in range(int(rng.integers(0, 8))):
        k = int(rng.integers(1, bound + 1)) * int(rng.choice([-1, 1]))
        S = np.array([[1, k], [0, 1]]) if rng.integers(0, 2) else np.array([[1, 0], [k, 1]])
        cand = M @ S
        if np.max(np.abs(cand)) <= bound:
            M = cand
    if rng.integers(0, 4) == 0:
        M = M @ np.array([[0, 1], [1, 0]])
    return M


def random_basis(rng: np.random.Generator) -> Basis:
    """Random well-conditioned basis (for sampling checks)."""
    while True:
        u = Vec2(*rng.normal(size=2))
        v = Vec2(*rng.normal(size=2))
        if abs(u.cross(v)) > 1e-3 * u.norm() * v.norm():
            return Basis(u, v)


def rectangular_basis(rng: np.random.Generator) -> Basis:
    """Random rectangular lattice: orthogonal sides, random aspect and rotation."""
    theta = rng.uniform(0, math.pi)
    ratio = math.exp(rng.uniform(-2.5, 2.5))
    return Basis(Vec2(1.0, 0.0), Vec2(0.0, ratio)).rotated(theta)
