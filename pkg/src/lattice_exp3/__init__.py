"""Compactified plane lattices as subsets of RP^1 of size at most three.

Modules: ``lattice_core`` (bases, reduction, generating triangles),
``exp_circle`` (finite subsets of RP^1), ``phi_map`` (the map and its
inverse), ``triangle_space`` (perimeter-one triangles), ``milnor_chart``
(Eisenstein chart onto S^3), ``knot_cert`` (Jones-polynomial verdicts),
``curves`` (sampled curves and polyline files), ``verify`` (seeded suites)
and ``cli``.
"""

from .exp_circle import CircleSubset, hausdorff, make_subset
from .lattice_core import Basis, Vec2, gauss_reduce
from .phi_map import Degenerate, NonDegenerate, phi, phi_inverse

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "CircleSubset",
    "Degenerate",
    "NonDegenerate",
    "Vec2",
    "gauss_reduce",
    "hausdorff",
    "make_subset",
    "phi",
    "phi_inverse",
]
