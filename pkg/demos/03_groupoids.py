"""Semidirect product groupoids on both path spaces and the isomorphism between them.

Run with ``python3 demos/03_groupoids.py``.
"""

from pgraphs import catalog
from pgraphs.filters import FilterSpace
from pgraphs.groupoid import (
    check_isomorphism,
    enumerate_groupoid,
    groupoid_axiom_check,
    psi_h,
    tau_equality_check,
)
from pgraphs.morphisms import MorphismSpace

E1 = catalog.e1()
fs = FilterSpace(E1)
gpd = enumerate_groupoid(fs, catalog.window_of(E1))
print(f"E1 groupoid: {len(gpd)} elements")
for g in gpd.elements:
    print(f"  ({fs.describe(g.x)}, {g.q}, {fs.describe(g.y)})")
print(f"boundary reduction: {len(gpd.reduction(fs.boundary()))} elements")
print(groupoid_axiom_check(gpd).summary())

print()
for name, G in catalog.standard_examples().items():
    bound = catalog.window_of(G)
    gf = enumerate_groupoid(FilterSpace(G), bound)
    gm = enumerate_groupoid(MorphismSpace(G), bound)
    print(f"{name:8} {len(gf):3} elements  {check_isomorphism(psi_h, gm, gf).summary()}")

G = catalog.e3((1, 1))
print()
print(tau_equality_check(enumerate_groupoid(MorphismSpace(G), G.window)).summary())
