import itertools
import math

import numpy as np
import pytest

from lattice_exp3.curves import planar_circle
from lattice_exp3.errors import InvalidPolyline, NoGenericDirection, TooManyCrossings
from lattice_exp3.knot_cert import (
    TREFOIL_LEFT,
    TREFOIL_RIGHT,
    UNKNOT,
    LaurentPoly,
    PlanarDiagram,
    Polyline3,
    Verdict,
    _NonGeneric,
    certify,
    classify_jones,
    is_trefoil,
    jones,
    kauffman_bracket,
    project_along,
    project_generic,
)

A = LaurentPoly.monomial
D_LOOP = LaurentPoly({2: -1, -2: -1})

# PD codes from the KnotTheory tables, shifted to 0-based labels
TREFOIL_PD = PlanarDiagram(((0, 3, 1, 4), (2, 5, 3, 0), (4, 1, 5, 2)), (-1, -1, -1))
FIGURE8_PD = PlanarDiagram(((3, 1, 4, 0), (7, 5, 0, 4), (5, 2, 6, 3), (1, 6, 2, 7)), (1, 1, -1, -1))
KINK_PD = PlanarDiagram(((1, 1, 0, 0),), (1,))
FIGURE8_JONES = LaurentPoly({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})


def bracket_oracle(pd: PlanarDiagram) -> LaurentPoly:
    """Plain 2^n state sum with union-find loop counting."""
    labels = sorted({e for x in pd.crossings for e in x})
    total = LaurentPoly()
    for state in itertools.product((1, -1), repeat=len(pd.crossings)):
        parent = {e: e for e in labels}

        def find(e):
            while parent[e] != e:
                e = parent[e]
            return e

        for (a, b, c, d), s in zip(pd.crossings, state):
            for x, y in ((a, b), (c, d)) if s == 1 else ((a, d), (b, c)):
                parent[find(x)] = find(y)
        loops = len({find(e) for e in labels})
        total = total + A(sum(state)) * D_LOOP ** (loops - 1)
    return total


def add_kink(pd: PlanarDiagram, edge: int, a_side: bool, fresh: int) -> PlanarDiagram:
    """Reidemeister-I curl on ``edge``; ``a_side`` puts the small loop on the A-smoothing pair."""
    x, y = fresh, fresh + 1
    crossings = [list(c) for c in pd.crossings]
    for c in crossings:
        if edge in c:
            c[c.index(edge)] = y
            break
    new = (x, x, edge, y) if a_side else (edge, x, x, y)
    return PlanarDiagram(tuple(map(tuple, crossings)) + (new,), pd.signs + (1,))


def test_laurent_basics():
    p = LaurentPoly({1: 2, -1: 0})
    assert p.coeffs == {1: 2}
    assert LaurentPoly({0: 1}) == 1
    assert (p * p).coeffs == {2: 4}
    assert (p - p) == LaurentPoly()
    assert TREFOIL_LEFT == LaurentPoly({4: -1, 3: 1, 1: 1})


def test_bracket_unknot_and_kink():
    assert kauffman_bracket(PlanarDiagram()) == 1
    assert kauffman_bracket(KINK_PD) == -A(3)
    assert jones(KINK_PD) == 1
    assert jones(PlanarDiagram()) == 1


def test_trefoil_table_diagram():
    assert kauffman_bracket(TREFOIL_PD) == bracket_oracle(TREFOIL_PD)
    assert kauffman_bracket(TREFOIL_PD) == LaurentPoly({-5: -1, 3: -1, 7: 1})
    assert jones(TREFOIL_PD) == TREFOIL_RIGHT
    assert classify_jones(jones(TREFOIL_PD)) is Verdict.RIGHT_TREFOIL


def test_figure_eight_table_diagram():
    assert kauffman_bracket(FIGURE8_PD) == bracket_oracle(FIGURE8_PD)
    assert jones(FIGURE8_PD) == FIGURE8_JONES
    assert classify_jones(FIGURE8_JONES) is Verdict.OTHER


@pytest.mark.parametrize("pd", [TREFOIL_PD, FIGURE8_PD, KINK_PD], ids=["trefoil", "figure8", "kink"])
def test_mirror(pd):
    m = pd.mirror()
    assert m.writhe == -pd.writhe
    assert kauffman_bracket(m) == kauffman_bracket(pd).mirror()
    assert jones(m) == jones(pd).mirror()


def test_skein_kink_factor(rng):
    for base in (TREFOIL_PD, FIGURE8_PD, KINK_PD):
        for _ in range(10):
            pd, fresh = base, 100
            for _ in range(int(rng.integers(1, 4))):
                edges = sorted({e for x in pd.crossings for e in x})
                edge = int(rng.choice(edges))
                a_side = bool(rng.integers(0, 2))
                before = kauffman_bracket(pd)
                pd = add_kink(pd, edge, a_side, fresh)
                fresh += 2
                factor = -A(3) if a_side else -A(-3)
                after = kauffman_bracket(pd)
                assert after == before * factor
                assert after == bracket_oracle(pd)


def test_gauss_code():
    # passages sorted by outgoing edge 0..5
    assert TREFOIL_PD.gauss_code() == [2, -1, 3, -2, 1, -3]


def loops_curve(k: int, samples: int = 400) -> np.ndarray:
    """Descending curve whose top view has ``k`` small loops; always an unknot."""
    t = 2 * math.pi * np.arange(samples) / samples
    c = np.exp(1j * t) + 0.8 * np.exp(1j * (k + 1) * t)
    return np.stack([c.real, c.imag, -t / (2 * math.pi)], 1)


def crossings_oracle(P: np.ndarray):
    """Top-view crossings of a closed polygon by pairwise segment tests; returns signs."""
    n = len(P)
    signs = []
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            p, r = P[i, :2], P[(i + 1) % n, :2] - P[i, :2]
            q, s = P[j, :2], P[(j + 1) % n, :2] - P[j, :2]
            den = r[0] * s[1] - r[1] * s[0]
            if den == 0:
                continue
            w = q - p
            a = (w[0] * s[1] - w[1] * s[0]) / den
            b = (w[0] * r[1] - w[1] * r[0]) / den
            if 0 < a < 1 and 0 < b < 1:
                zi = P[i, 2] + a * (P[(i + 1) % n, 2] - P[i, 2])
                zj = P[j, 2] + b * (P[(j + 1) % n, 2] - P[j, 2])
                over, under = (r, s) if zi > zj else (s, r)
                signs.append(1 if over[0] * under[1] - over[1] * under[0] > 0 else -1)
    return signs


@pytest.mark.parametrize("k", [1, 2, 3])
def test_unknot_with_kinks(k):
    P = loops_curve(k)
    d = project_along(Polyline3(P), (0, 0, 1))
    ref = crossings_oracle(P)
    assert len(d) == len(ref) == k
    assert d.writhe == sum(ref)
    assert jones(d) == 1
    for seed in range(5):
        assert is_trefoil(Polyline3(P), seed) is Verdict.UNKNOT


def torus_23(samples: int = 300, mirror: bool = False) -> np.ndarray:
    """Torus (2, 3) knot ``r = 2 + cos 3t, z = -sin 3t``: the positive trefoil."""
    t = 2 * math.pi * np.arange(samples) / samples
    r = 2 + np.cos(3 * t)
    z = -np.sin(3 * t) * (-1 if mirror else 1)
    return np.stack([r * np.cos(2 * t), r * np.sin(2 * t), z], 1)


def test_positive_trefoil_jones():
    # every top-view crossing is positive
    P = torus_23(301)  # odd count keeps crossings off the vertices
    ref = crossings_oracle(P)
    assert ref == [1, 1, 1]
    d = project_along(Polyline3(P), (0, 0, 1))
    assert sorted(d.signs) == ref
    # positive trefoil: t + t^3 - t^4 in every standard table
    assert jones(d) == LaurentPoly({1: 1, 3: 1, 4: -1})


def test_mirrored_polyline_mirrors_verdict():
    for seed in range(5):
        v = is_trefoil(Polyline3(torus_23()), seed)
        w = is_trefoil(Polyline3(torus_23(mirror=True)), seed)
        assert {v, w} == {Verdict.RIGHT_TREFOIL, Verdict.LEFT_TREFOIL}


def test_planar_circle():
    c = Polyline3(planar_circle(64))
    assert len(project_generic(c, 0)) == 0
    cert = certify(c, 0)
    assert cert.verdict is Verdict.UNKNOT and cert.jones == UNKNOT and cert.crossings == 0


def test_tangent_direction_retried():
    P = planar_circle(64)
    c = Polyline3(P)
    tangent = P[1] - P[0]
    with pytest.raises(_NonGeneric):
        project_along(c, tangent)
    assert len(project_generic(c, 0, first_direction=tangent)) == 0


def test_projection_seed_independence():
    c = Polyline3(torus_23(400))
    polys = {tuple(sorted(certify(c, s).jones.coeffs.items())) for s in range(20)}
    assert len(polys) == 1


def test_too_many_crossings():
    t = 2 * math.pi * np.arange(1501) / 1501
    r = 2 + np.cos(31 * t)
    c = Polyline3(np.stack([r * np.cos(2 * t), r * np.sin(2 * t), np.sin(31 * t)], 1), check=False)
    with pytest.raises(TooManyCrossings):
        project_along(c, (0.01, 0.02, 1))
    with pytest.raises(TooManyCrossings):
        project_generic(c, 0)


def test_polyline_validation():
    with pytest.raises(InvalidPolyline):
        Polyline3(np.zeros((7, 3)))
    P = planar_circle(16)
    with pytest.raises(InvalidPolyline):
        Polyline3(np.vstack([P, P[-1:]]))
    # planar figure eight crosses itself
    t = 2 * math.pi * np.arange(64) / 64
    with pytest.raises(InvalidPolyline):
        Polyline3(np.stack([np.sin(2 * t), np.sin(t), 0 * t], 1))
    with pytest.raises(InvalidPolyline):
        Polyline3(np.full((8, 3), np.nan))


def test_diagram_validation():
    with pytest.raises(ValueError):
        PlanarDiagram(((0, 1, 2, 3),), (1,))
    with pytest.raises(ValueError):
        PlanarDiagram(((1, 1, 0, 0),), ())
    assert NoGenericDirection.__mro__[1:]  # exported error type
