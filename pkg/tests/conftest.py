import math

import numpy as np
import pytest
from hypothesis import strategies as st

from lattice_exp3.lattice_core import Basis, Vec2

SQRT3 = math.sqrt(3.0)
SQUARE = Basis.from_coords(1, 0, 0, 1)
HEXAGONAL = Basis.from_coords(1, 0, 0.5, SQRT3 / 2)


def brute_shortest_norm(b: Basis) -> float:
    """Shortest nonzero lattice vector by exhaustive search.

    Any w = m u + n v with |w| <= r has |n| <= r |u| / |u x v| and
    |m| <= r |v| / |u x v|, so the box below is guaranteed to contain it.
    """
    r = min(b.u.norm(), b.v.norm())
    area = abs(b.u.cross(b.v))
    bm = math.ceil(r * b.v.norm() / area) + 1
    bn = math.ceil(r * b.u.norm() / area) + 1
    m, n = np.meshgrid(np.arange(-bm, bm + 1), np.arange(-bn, bn + 1))
    m, n = m.ravel(), n.ravel()
    nz = (m != 0) | (n != 0)
    x = m[nz] * b.u.x + n[nz] * b.v.x
    y = m[nz] * b.u.y + n[nz] * b.v.y
    return float(np.min(np.hypot(x, y)))

coord = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def bases(draw):
    ux, uy, vx, vy = (draw(coord) for _ in range(4))
    u, v = Vec2(ux, uy), Vec2(vx, vy)
    nu, nv = u.norm(), v.norm()
    # keep the sample well conditioned so tolerances stay meaningful
    from hypothesis import assume

    assume(nu > 1e-3 and nv > 1e-3 and abs(u.cross(v)) > 1e-2 * nu * nv)
    return Basis(u, v)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


#: (criterion number, passed, detail) lines collected by the acceptance module
ACCEPTANCE_LINES: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for num, ok, detail in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
