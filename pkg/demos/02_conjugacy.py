"""Filters versus graph morphisms: the conjugacy between the two actions.

Run with ``python3 demos/02_conjugacy.py``.
"""

from pgraphs import catalog
from pgraphs.degree import INF, Degree, grid_class
from pgraphs.filters import FilterSpace
from pgraphs.morphisms import (
    MorphismSpace,
    act_morphism,
    conjugacy_report,
    make_path_morphism,
    stored_degrees,
    to_filter,
)

N2 = catalog.N2

G = catalog.e3((1, 1))
fs, ms = FilterSpace(G), MorphismSpace(G)
print("paths as graph morphisms and their filters:")
for x in ms.points:
    print(f"  {x}  ->  {fs.describe(to_filter(x))}")

m = Degree(N2, (1, 0))
x = ms.points[-1]
print(f"\n{x} . {m} = {ms.act(x, m)}")
print(f"h(x) . {m} = {fs.describe(fs.act(to_filter(x), m))}")

# A path with infinite domain, stored on a window.
W = catalog.e3((3, 2))
cls = grid_class(N2, (INF, 2))
values = {q: ("b" * q.value[0] + "r" * q.value[1]) or "u" for q in stored_degrees(W, cls)}
y = make_path_morphism(W, cls, values, W.window, check=True)
print(f"\ndomain class {y.domain_class}, after acting by (1,1): "
      f"{act_morphism(y, Degree(N2, (1, 1))).domain_class}")

for name, H in catalog.standard_examples().items():
    print(conjugacy_report(FilterSpace(H), MorphismSpace(H)).summary(), f"[{name}]")
