# %% [markdown]
# Approaching the degenerate circle
#
# Flattening a right triangle (legs eps : 1) drives its lattice toward the
# degenerate lattice along the long leg; the three image lines collapse
# onto that single line.

# %%
import math

from lattice_exp3.exp_circle import delta_embed, hausdorff
from lattice_exp3.phi_map import phi
from lattice_exp3.triangle_space import degenerate_path, make_shape, p_map
from lattice_exp3.lattice_core import Vec2

theta = math.radians(40)
for k in range(1, 7):
    eps = 10.0**-k
    img = phi(p_map(degenerate_path(theta, eps)))
    print(f"eps=1e-{k}  lines={len(img)}  distance to {{theta}} = {hausdorff(img, delta_embed(theta)):.2e}")

# %%
# the limit itself is an exact degenerate shape
s = make_shape(Vec2(0, 0), Vec2(math.cos(theta), math.sin(theta)))
print(s.is_degenerate, p_map(s))
