# %% [markdown]
# Lattices on the 3-sphere
#
# g2 and g3 of a lattice, rescaled along the weighted action
# (t^-4 g2, t^-6 g3) until |g2|^2 + |g3|^2 = 1.  Degenerate lattices land on
# the curve z^3 = 27 w^2, a (2,3) torus knot.

# %%
import math

from lattice_exp3.lattice_core import Basis
from lattice_exp3.milnor_chart import chart_discriminant, chart_point, discriminant, eisenstein, lattice_sum_invariants, tau_of

square = Basis.from_coords(1, 0, 0, 1)
hexagonal = Basis.from_coords(1, 0, 0.5, math.sqrt(3) / 2)
print("square    g2, g3 =", eisenstein(tau_of(square)))
print("hexagonal g2, g3 =", eisenstein(tau_of(hexagonal)))

# %%
# the q-series against a brute force lattice sum
tau = complex(0.2, 1.3)
series = eisenstein(tau_of(Basis.from_coords(1, 0, tau.real, tau.imag)))
direct = lattice_sum_invariants(tau)[:2]
print("series:", series)
print("direct:", direct)

# %%
# squeezing the lattice pushes its chart point onto the knot
for eps in (0.5, 0.2, 0.1, 0.05, 0.02):
    b = Basis.from_coords(1, 0, 0, eps)
    p = chart_point(b)
    print(f"eps={eps:<5}  z={p.z:.4f}  w={p.w:.4f}  |disc|={abs(chart_discriminant(b)):.2e}")
print("float discriminant at eps=0.02:", abs(discriminant(p.z, p.w)), "(cancellation; see chart_discriminant)")
