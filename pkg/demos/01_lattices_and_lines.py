# %% [markdown]
# Lattices and the lines through a circumcenter
#
# A plane lattice, taken up to scaling, is sent to at most three lines
# through the origin: the lines joining the circumcenter of a non-obtuse
# generating triangle to its vertices.

# %%
import math

from lattice_exp3.exp_circle import make_subset
from lattice_exp3.lattice_core import Basis, enumerate_generator_triangles, gauss_reduce, is_rectangular
from lattice_exp3.phi_map import Degenerate, phi, phi_inverse

square = Basis.from_coords(1, 0, 0, 1)
hexagonal = Basis.from_coords(1, 0, 0.5, math.sqrt(3) / 2)
skew = Basis.from_coords(1, 0, 5, 1)  # the square lattice again, badly presented

print("reduced skew basis:", gauss_reduce(skew).as_lists())

# %%
# 12 generating triangles for rectangular lattices, 6 otherwise
for name, b in [("square", square), ("hexagonal", hexagonal), ("generic", Basis.from_coords(1, 0, 0.1, 1.1))]:
    print(f"{name:10s} rectangular={is_rectangular(b)!s:5s} triangles={len(enumerate_generator_triangles(b))}")

# %%
# image lines, in degrees for reading only (the library works in radians)
for name, b in [("square", square), ("hexagonal", hexagonal), ("2x1 rectangle", Basis.from_coords(2, 0, 0, 1))]:
    print(f"{name:14s}", [round(math.degrees(a), 4) for a in phi(b).points])
print("degenerate 30 deg", [round(math.degrees(a), 4) for a in phi(Degenerate(math.radians(30))).points])

# %%
# and back: three lines give a lattice, two a rectangle, one a degenerate lattice
for angles in ([30, 90, 150], [45, 135], [17]):
    s = make_subset([math.radians(a) for a in angles])
    print(angles, "->", phi_inverse(s))
