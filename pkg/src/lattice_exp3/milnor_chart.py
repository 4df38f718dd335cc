"""Eisenstein chart: lattices mod scale -> unit sphere S^3 in C^2.

A lattice ``L`` has weight-4 and weight-6 invariants ``g2(L) = 60 sum' w^-4``
and ``g3(L) = 140 sum' w^-6``.  Scaling ``L`` by ``t > 0`` acts by
``(t^-4 g2, t^-6 g3)``; each orbit of this action meets the unit sphere
exactly once, which gives the chart.  Degenerate lattices land on the
trefoil ``{z^3 = 27 w^2}`` where the discriminant vanishes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .errors import BothZero, PoleHit
from .lattice_core import Basis, gauss_reduce
from .phi_map import CompactifiedLattice, Degenerate, NonDegenerate

PI = math.pi
#: g2, g3 of the lattice Z + tau Z at q = 0
G2_0 = 4 * PI**4 / 3
G3_0 = 8 * PI**6 / 27

_SERIES_EPS = 1e-16
_BISECT_ITERS = 200


@dataclass(frozen=True, slots=True)
class TauForm:
    """Lattice ``u * (Z + tau Z)`` with ``tau`` in the standard fundamental domain."""

    u: complex
    tau: complex

    def __post_init__(self):
        t = self.tau
        if not (t.imag > 0 and abs(t.real) <= 0.5 + 1e-12 and abs(t) >= 1 - 1e-12):
            raise ValueError(f"tau outside the fundamental domain: {t}")


@dataclass(frozen=True, slots=True)
class S3Point:
    z: complex
    w: complex

    def __post_init__(self):
        n = abs(self.z) ** 2 + abs(self.w) ** 2
        if abs(n - 1.0) > 1e-10:
            raise ValueError(f"|z|^2 + |w|^2 = {n}, not on the unit sphere")

    def as_r4(self) -> np.ndarray:
        return np.array([self.z.real, self.z.imag, self.w.real, self.w.imag])

    @classmethod
    def from_r4(cls, x) -> S3Point:
        return cls(complex(x[0], x[1]), complex(x[2], x[3]))


def tau_of(b: Basis) -> TauForm:
    r = gauss_reduce(b)
    U = complex(r.u.x, r.u.y)
    V = complex(r.v.x, r.v.y)
    tau = V / U
    if tau.imag < 0:
        V, tau = -V, -tau
    # boundary identifications: keep the representative with Re tau >= 0
    if tau.real < -0.5 + 1e-12:
        V, tau = V + U, tau + 1
    elif tau.real < 0 and abs(tau) < 1 + 1e-12:
        U, V = V, -U
        tau = V / U
    return TauForm(U, tau)


@lru_cache(maxsize=None)
def _sigma(n: int, k: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def _q_series(q: complex, k: int) -> complex:
    """``sum_{n >= 1} sigma_k(n) q^n``, truncated below machine precision."""
    total = 0j
    qn = 1.0 + 0j
    aq = abs(q)
    n = 0
    while True:
        n += 1
        qn *= q
        total += _sigma(n, k) * qn
        # sigma_k(n) <= zeta(k) n^k < 2 n^k bounds every later term geometrically
        if 2 * n**k * aq**n * 1000 < _SERIES_EPS:
            return total


def eisenstein(t: TauForm) -> tuple[complex, complex]:
    """Lattice invariants ``(g2, g3)`` of ``u (Z + tau Z)`` from q-expansions."""
    q = cmath.exp(2j * PI * t.tau)
    g2 = G2_0 * (1 + 240 * _q_series(q, 3))
    g3 = G3_0 * (1 - 504 * _q_series(q, 5))
    return g2 * t.u**-4, g3 * t.u**-6


def discriminant(g2: complex, g3: complex) -> complex:
    return g2**3 - 27 * g3**2


def discriminant_product(t: TauForm) -> complex:
    """``g2^3 - 27 g3^2`` via ``(2 pi)^12 q prod (1 - q^n)^24``, free of cancellation."""
    q = cmath.exp(2j * PI * t.tau)
    prod = 1.0 + 0j
    qn = 1.0 + 0j
    while True:
        qn *= q
        prod *= (1 - qn) ** 24
        if 24 * abs(qn) < _SERIES_EPS * 1e-3:
            break
    return (2 * PI) ** 12 * q * prod * t.u**-12


def _scale_parameter(a: float, b: float) -> float:
    """Unique ``t > 0`` with ``(a / t^4)^2 + (b / t^6)^2 = 1``."""

    def f(t):
        return (a / t**4) ** 2 + (b / t**6) ** 2 - 1.0

    # one term equals 1 at lo, both are <= 1/2 at hi
    lo = max(a ** 0.25, b ** (1 / 6))
    hi = max((a * math.sqrt(2)) ** 0.25, (b * math.sqrt(2)) ** (1 / 6))
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    t = 0.5 * (lo + hi)
    df = -8 * a**2 / t**9 - 12 * b**2 / t**13
    if df != 0.0:
        t_new = t - f(t) / df
        if lo * (1 - 1e-12) <= t_new <= hi * (1 + 1e-12):
            t = t_new
    return t


def normalize_to_s3(g2: complex, g3: complex) -> S3Point:
    a, b = abs(g2), abs(g3)
    if a == 0.0 and b == 0.0:
        raise BothZero("(g2, g3) = (0, 0) has no scale orbit")
    t = _scale_parameter(a, b)
    return S3Point(g2 / t**4, g3 / t**6)


def chart_point(L: CompactifiedLattice | Basis) -> S3Point:
    """Image of a (possibly degenerate) lattice on S^3.

    A degenerate lattice along the line ``theta`` is the limit of lattices
    whose short vector (length -> 0) is perpendicular to that line, so its
    image is the normalised ``(G2_0 s^-4, G3_0 s^-6)`` with
    ``s = exp(i (theta + pi/2))``.
    """
    if isinstance(L, Basis):
        L = NonDegenerate(L)
    if isinstance(L, Degenerate):
        s = cmath.exp(1j * (L.direction + PI / 2))
        return normalize_to_s3(G2_0 * s**-4, G3_0 * s**-6)
    return normalize_to_s3(*eisenstein(tau_of(L.basis)))


def chart_discriminant(b: Basis) -> complex:
    """Discriminant of the chart point of ``b``, i.e. ``t^-12 (g2^3 - 27 g3^2)``."""
    tf = tau_of(b)
    g2, g3 = eisenstein(tf)
    t = _scale_parameter(abs(g2), abs(g3))
    return discriminant_product(tf) / t**12


@lru_cache(maxsize=None)
def torus_radii() -> tuple[float, float]:
    """``(a, b)``, both positive, with ``a^3 = 27 b^2`` and ``a^2 + b^2 = 1``."""

    def f(a):
        return a * a + a**3 / 27 - 1.0

    lo, hi = 0.0, 1.0
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    a = 0.5 * (lo + hi)
    a -= f(a) / (2 * a + a * a / 9)
    return a, math.sqrt(a**3 / 27)


def torus_knot_point(t: float) -> S3Point:
    a, b = torus_radii()
    return S3Point(a * cmath.exp(2j * t), b * cmath.exp(3j * t))


def torus_knot_curve(n: int) -> np.ndarray:
    """``n`` equally spaced samples of the discriminant knot, as an ``(n, 4)`` array."""
    a, b = torus_radii()
    t = 2 * PI * np.arange(n) / n
    return np.stack([a * np.cos(2 * t), a * np.sin(2 * t), b * np.cos(3 * t), b * np.sin(3 * t)], axis=1)


def _orthonormal_complement(pole: np.ndarray) -> np.ndarray:
    """Rows ``e1, e2, e3`` spanning ``pole^perp`` with ``det[e1, e2, e3, pole] = +1``."""
    k = int(np.argmax(np.abs(pole)))
    v = pole.copy()
    v[k] += math.copysign(1.0, pole[k])
    H = np.eye(4) - 2.0 * np.outer(v, v) / v.dot(v)
    # H is a symmetric reflection with H e_k = -sign(p_k) pole; its other columns span pole^perp
    E = np.delete(H, k, axis=1).T
    if np.linalg.det(np.vstack([E, pole])) < 0:
        E[2] = -E[2]
    return E


def stereographic_array(X: np.ndarray, pole: S3Point | np.ndarray) -> np.ndarray:
    """Project rows of ``X`` (points of S^3 in R^4) from ``pole`` to R^3."""
    p = pole.as_r4() if isinstance(pole, S3Point) else np.asarray(pole, dtype=float)
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if np.min(np.linalg.norm(X - p, axis=1)) <= 1e-9:
        raise PoleHit("a point coincides with the projection pole")
    E = _orthonormal_complement(p)
    return (X @ E.T) / (1.0 - X @ p)[:, None]


def stereographic(p: S3Point, pole: S3Point) -> np.ndarray:
    return stereographic_array(p.as_r4()[None, :], pole)[0]


# --- cross-check oracles -------------------------------------------------


def lattice_sum_invariants(tau: complex, n_max: int = 400) -> tuple[complex, complex, float, float]:
    """``(g2, g3)`` of ``Z + tau Z`` by brute-force summation over ``|m|, |n| <= N``.

    The box sums for ``N = n_max/4, n_max/2, n_max`` have tails with
    expansions in ``N^-2, N^-3, ...``; two Richardson steps remove the first
    two terms.  Also returns the absolute sums ``60 sum'|w|^-4`` and
    ``140 sum'|w|^-6`` as scales for relative errors.
    """
    sums = []
    for N in (n_max // 4, n_max // 2, n_max):
        m = np.arange(-N, N + 1)
        M, K = np.meshgrid(m, m)
        w = (M + K * tau)[(M != 0) | (K != 0)]
        sums.append((60 * np.sum(w**-4.0), 140 * np.sum(w**-6.0)))
    aw = np.abs(w)
    scale4, scale6 = 60 * np.sum(aw**-4.0), 140 * np.sum(aw**-6.0)

    def extrapolate(s0, s1, s2):
        r01 = (4 * s1 - s0) / 3
        r12 = (4 * s2 - s1) / 3
        return (8 * r12 - r01) / 7

    g2 = extrapolate(*(s[0] for s in sums))
    g3 = extrapolate(*(s[1] for s in sums))
    return complex(g2), complex(g3), float(scale4), float(scale6)


def chart_point_mp(b: Basis, dps: int = 250) -> tuple[mpmath.mpc, mpmath.mpc]:
    """Chart point in extended precision.

    Near-degenerate lattices sit within ``|q| ~ exp(-2 pi Im tau)`` of the
    discriminant knot, far below double precision.
    """
    with mpmath.workdps(dps):
        r = gauss_reduce(b)
        U = mpmath.mpc(r.u.x, r.u.y)
        V = mpmath.mpc(r.v.x, r.v.y)
        tau = V / U
        if tau.imag < 0:
            tau = -tau
        q = mpmath.exp(2j * mpmath.pi * tau)
        eps = mpmath.mpf(10) ** (-dps)
        s3 = s5 = mpmath.mpc(0)
        qn = mpmath.mpc(1)
        n = 0
        while True:
            n += 1
            qn *= q
            s3 += _sigma(n, 3) * qn
            s5 += _sigma(n, 5) * qn
            if 2 * n**5 * abs(qn) < eps:
                break
        g2 = 4 * mpmath.pi**4 / 3 * (1 + 240 * s3) * U**-4
        g3 = 8 * mpmath.pi**6 / 27 * (1 - 504 * s5) * U**-6
        A2, B2 = abs(g2) ** 2, abs(g3) ** 2
        # s = t^-4 solves A2 s^2 + B2 s^3 = 1
        s = mpmath.findroot(lambda s: A2 * s**2 + B2 * s**3 - 1, mpmath.mpf(1) / max(abs(g2), abs(g3) ** (2 / 3)))
        return +(g2 * s), +(g3 * s ** mpmath.mpf(1.5))


def torus_knot_point_mp(t, dps: int = 250) -> tuple[mpmath.mpc, mpmath.mpc]:
    with mpmath.workdps(dps):
        a = mpmath.findroot(lambda a: a * a + a**3 / 27 - 1, mpmath.mpf(torus_radii()[0]))
        bb = mpmath.sqrt(a**3 / 27)
        return a * mpmath.expj(2 * t), bb * mpmath.expj(3 * t)


def distance_to_sampled_torus_mp(b: Basis, samples: int = 4096, dps: int = 250, candidates: int = 8):
    """Distance in R^4 from the chart point of ``b`` to the nearest of ``samples`` knot points."""
    z, w = chart_point_mp(b, dps)
    x = np.array([float(z.real), float(z.imag), float(w.real), float(w.imag)])
    curve = torus_knot_curve(samples)
    order = np.argsort(np.linalg.norm(curve - x, axis=1))[:candidates]
    best = None
    with mpmath.workdps(dps):
        for k in order:
            tk = 2 * mpmath.pi * int(k) / samples
            zk, wk = torus_knot_point_mp(tk, dps)
            d = mpmath.sqrt(abs(z - zk) ** 2 + abs(w - wk) ** 2)
            if best is None or d < best:
                best = d
    return best
