import cmath
import math

import mpmath
import numpy as np
import pytest

from conftest import HEXAGONAL, SQUARE
from lattice_exp3.errors import BothZero, PoleHit
from lattice_exp3.lattice_core import Basis, random_basis, random_unimodular
from lattice_exp3.milnor_chart import (
    S3Point,
    TauForm,
    _orthonormal_complement,
    chart_discriminant,
    chart_point,
    discriminant,
    discriminant_product,
    eisenstein,
    lattice_sum_invariants,
    normalize_to_s3,
    stereographic,
    stereographic_array,
    tau_of,
    torus_knot_curve,
    torus_knot_point,
    torus_radii,
)
from lattice_exp3.phi_map import Degenerate
from lattice_exp3.verify import degeneration_profile, random_fundamental_tau

PI = math.pi


def test_tau_examples():
    assert tau_of(SQUARE).tau == pytest.approx(1j)
    assert tau_of(HEXAGONAL).tau == pytest.approx(cmath.exp(1j * PI / 3))
    t = tau_of(Basis.from_coords(2, 0, 0, 2))
    assert t.tau == pytest.approx(1j) and t.u == pytest.approx(2)
    # boundary tau = -1/2 + i y is identified with 1/2 + i y
    assert tau_of(Basis.from_coords(1, 0, -0.5, 2)).tau == pytest.approx(0.5 + 2j)
    with pytest.raises(ValueError):
        TauForm(1, 0.9j)


def test_symmetric_zeros():
    assert abs(eisenstein(tau_of(SQUARE))[1]) < 1e-12
    assert abs(eisenstein(tau_of(HEXAGONAL))[0]) < 1e-12


def test_known_values_square():
    # g2(Z[i]) = Gamma(1/4)^8 / (16 pi^2), from the lemniscate constant
    g2_ref = float(mpmath.gamma(0.25) ** 8 / (16 * mpmath.pi**2))
    assert eisenstein(tau_of(SQUARE))[0] == pytest.approx(g2_ref, rel=1e-13)


@pytest.mark.parametrize("k", range(8))
def test_series_vs_direct_lattice_sum(k):
    tau = random_fundamental_tau(np.random.default_rng(1000 + k))
    g2, g3 = eisenstein(TauForm(1, tau))
    s2, s3, scale4, scale6 = lattice_sum_invariants(tau)
    assert abs(g2 - s2) <= 1e-8 * scale4
    assert abs(g3 - s3) <= 1e-8 * scale6


def test_weights_under_scaling(rng):
    for _ in range(100):
        b = random_basis(rng)
        lam = cmath.exp(complex(rng.normal(), rng.uniform(0, 2 * PI)))
        g2, g3 = eisenstein(tau_of(b))
        zu, zv = complex(b.u.x, b.u.y) * lam, complex(b.v.x, b.v.y) * lam
        bb = Basis.from_coords(zu.real, zu.imag, zv.real, zv.imag)
        h2, h3 = eisenstein(tau_of(bb))
        assert h2 == pytest.approx(g2 * lam**-4, rel=1e-11)
        assert h3 == pytest.approx(g3 * lam**-6, rel=1e-11)


def test_modular_invariance(rng):
    for k in range(200):
        b = random_basis(rng)
        g2, g3 = eisenstein(tau_of(b))
        h2, h3 = eisenstein(tau_of(b.transform(random_unimodular(k, 3))))
        assert abs(h2 - g2) <= 1e-9 * max(abs(g2), abs(g3) ** (2 / 3), 1e-300)
        assert abs(h3 - g3) <= 1e-9 * max(abs(g3), abs(g2) ** 1.5, 1e-300)


@pytest.mark.parametrize("g, expected", [((1, 0), 1), ((0, 1), -27), ((3, 1), 0)])
def test_discriminant_examples(g, expected):
    assert discriminant(*g) == expected


def test_discriminant_product_identity(rng):
    for _ in range(100):
        t = TauForm(1, random_fundamental_tau(rng))
        ref = discriminant(*eisenstein(t))
        assert abs(discriminant_product(t) - ref) <= 1e-8 * abs(ref)


def test_normalize_examples():
    a, b = torus_radii()
    p = normalize_to_s3(a, b)
    assert (p.z, p.w) == pytest.approx((a, b), abs=1e-15)
    p = normalize_to_s3(2, 0)
    assert (p.z, p.w) == pytest.approx((1, 0), abs=1e-15)
    p = normalize_to_s3(0, -5j)
    assert (p.z, p.w) == pytest.approx((0, -1j), abs=1e-15)
    with pytest.raises(BothZero):
        normalize_to_s3(0, 0)


def test_normalize_scale_orbit(rng):
    for _ in range(1000):
        g2, g3 = complex(*rng.normal(size=2)) * 10 ** rng.uniform(-8, 8), complex(*rng.normal(size=2))
        t = 10 ** rng.uniform(-2, 2)
        p, q = normalize_to_s3(g2, g3), normalize_to_s3(g2 * t**-4, g3 * t**-6)
        assert abs(abs(p.z) ** 2 + abs(p.w) ** 2 - 1) <= 1e-10
        assert abs(p.z - q.z) + abs(p.w - q.w) <= 1e-10


def test_chart_depends_on_lattice_mod_scale(rng):
    for k in range(100):
        b = random_basis(rng)
        p = chart_point(b)
        q = chart_point(b.transform(random_unimodular(k, 3)).scaled(rng.uniform(0.1, 10)))
        assert abs(p.z - q.z) + abs(p.w - q.w) <= 1e-9


def test_degenerate_chart_point_on_knot():
    for theta in np.linspace(0, PI, 13, endpoint=False):
        p = chart_point(Degenerate(theta))
        assert abs(discriminant(p.z, p.w)) < 1e-13


def test_torus_radii_oracle():
    # positive real root of a^3/27 + a^2 - 1 from the polynomial companion matrix
    roots = np.roots([1 / 27, 1, 0, -1])
    a_ref = float(max(r.real for r in roots if abs(r.imag) < 1e-12 and 0 < r.real < 1))
    a, b = torus_radii()
    assert a == pytest.approx(a_ref, abs=1e-14)
    assert a * a + b * b == pytest.approx(1, abs=1e-15)
    assert a**3 == pytest.approx(27 * b * b, abs=1e-14)


def test_torus_knot_point_identities(rng):
    for t in rng.uniform(-10, 10, 100):
        p = torus_knot_point(t)
        assert abs(p.z**3 - 27 * p.w**2) < 1e-14
        q = torus_knot_point(t + 2 * PI)
        assert abs(p.z - q.z) + abs(p.w - q.w) < 1e-13
    p0 = torus_knot_point(0.0)
    assert p0.z.imag == 0 and p0.w.imag == 0 and p0.z.real > 0 and p0.w.real > 0
    curve = torus_knot_curve(64)
    assert np.allclose(curve[5], torus_knot_point(2 * PI * 5 / 64).as_r4())


def test_stereographic_examples(rng):
    for _ in range(50):
        pole = rng.normal(size=4)
        pole /= np.linalg.norm(pole)
        P = S3Point.from_r4(pole)
        assert np.allclose(stereographic(S3Point.from_r4(-pole), P), 0, atol=1e-15)
        E = _orthonormal_complement(pole)
        assert np.allclose(E @ E.T, np.eye(3), atol=1e-14)
        assert np.linalg.det(np.vstack([E, pole])) == pytest.approx(1)
        x = rng.normal(size=4)
        x -= x.dot(pole) * pole
        x /= np.linalg.norm(x)
        assert np.linalg.norm(stereographic(S3Point.from_r4(x), P)) == pytest.approx(1)
        norms = []
        for h in (1e-1, 1e-3, 1e-5):
            y = pole + h * x
            norms.append(np.linalg.norm(stereographic_array(y / np.linalg.norm(y), pole)))
        assert norms[0] < norms[1] < norms[2]
        with pytest.raises(PoleHit):
            stereographic(P, P)


def test_stereographic_inverse_formula(rng):
    pole = np.array([0.0, 0.0, 0.0, 1.0])
    X = rng.normal(size=(100, 4))
    X /= np.linalg.norm(X, axis=1)[:, None]
    Y = stereographic_array(X, pole)
    # textbook inverse from the north pole, up to the orthonormal frame
    r2 = np.sum(Y**2, 1)
    assert np.allclose((r2 - 1) / (r2 + 1), X @ pole)


def test_chart_discriminant_consistent(rng):
    for _ in range(50):
        b = random_basis(rng)
        p = chart_point(b)
        assert chart_discriminant(b) == pytest.approx(discriminant(p.z, p.w), rel=1e-8)


@pytest.mark.slow
def test_degeneration_profile():
    discs, dists = degeneration_profile()
    assert all(x > y for x, y in zip(discs, discs[1:]))
    assert all(x > y for x, y in zip(dists, dists[1:]))
    assert discs[-1] < 1e-3
