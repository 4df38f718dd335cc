# %% [markdown]
# The diagonal is a trefoil
#
# Push the diagonal circle {x} off to {x - d, x, x + d}, pull each subset
# back to a lattice, send it through the chart, project to R^3 and compute
# the Jones polynomial of a generic planar diagram.

# %%
from lattice_exp3 import curves
from lattice_exp3.knot_cert import Polyline3, certify, project_generic

torus = Polyline3(curves.trefoil_curve(512, kind="torus"))
pushoff = Polyline3(curves.trefoil_curve(720, delta=0.1))
circle = Polyline3(curves.planar_circle(64))

for name, c in [("torus knot", torus), ("push-off", pushoff), ("circle", circle)]:
    cert = certify(c, seed=0)
    print(f"{name:10s} {cert.verdict.value:12s} crossings={cert.crossings}  V(t)={cert.jones}")

# %%
# different projection directions give different diagrams, same polynomial
for seed in range(4):
    d = project_generic(pushoff, seed)
    print(seed, "crossings", len(d), "writhe", d.writhe, "gauss code", d.gauss_code())

# %%
# write it out for plotting elsewhere
curves.write_polyline("/tmp/trefoil.obj", pushoff.points)
print("wrote /tmp/trefoil.obj")
