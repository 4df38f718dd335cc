import numpy as np
import pytest

from lattice_exp3 import curves
from lattice_exp3.milnor_chart import torus_knot_curve


@pytest.mark.parametrize("fmt", curves.FORMATS)
def test_roundtrip_exact(fmt, tmp_path, rng):
    pts = rng.normal(size=(50, 3)) * 10.0 ** rng.integers(-12, 12, size=(50, 3))
    path = tmp_path / f"curve.{fmt}"
    curves.write_polyline(path, pts)
    back = curves.read_polyline(path)
    assert np.array_equal(back, pts)


def test_csv_layout():
    text = curves.dumps_polyline(np.array([[0.1, 2, -3e-20]] * 2), "csv")
    lines = text.splitlines()
    assert lines[0] == "x,y,z" and len(lines) == 3
    assert lines[1] == "0.10000000000000001,2,-3.0000000000000003e-20"


def test_obj_closed_line():
    text = curves.dumps_polyline(np.zeros((4, 3)), "obj")
    assert text.splitlines()[-1] == "l 1 2 3 4 1"


def test_format_errors(tmp_path):
    with pytest.raises(ValueError):
        curves.format_of("curve.txt")
    with pytest.raises(ValueError):
        curves.loads_polyline("x,y,z\n1,2\n", "csv")


def test_select_pole_far_from_curve():
    c = torus_knot_curve(256)
    pole = curves.select_pole(c)
    assert np.linalg.norm(pole) == pytest.approx(1)
    grid = curves.s3_grid()
    assert len(grid) == 1024
    dist = np.min(np.linalg.norm(grid[:, None] - c[None], axis=-1), axis=1)
    assert np.min(np.linalg.norm(c - pole, axis=1)) == pytest.approx(dist.max())


def test_pushoff_curve_deterministic():
    a = curves.trefoil_curve(90, 0.1)
    b = curves.trefoil_curve(90, 0.1)
    assert np.array_equal(a, b)
    assert a.shape == (90, 3)


def test_diagonal_curve_on_knot():
    D = curves.diagonal_curve(32)
    z = D[:, 0] + 1j * D[:, 1]
    w = D[:, 2] + 1j * D[:, 3]
    assert np.max(np.abs(z**3 - 27 * w**2)) < 1e-13
