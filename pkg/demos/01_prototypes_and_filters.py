"""Path prototypes, windows and the filter path space.

Run with ``python3 demos/01_prototypes_and_filters.py``.
"""

from pgraphs import catalog
from pgraphs.degree import Degree, GridSubmonoid, minimal_upper_bounds
from pgraphs.filters import FilterSpace, is_exhaustive
from pgraphs.pgraph import build_omega, is_finitely_aligned, validate

N2 = catalog.N2

# The prototype on (1,1): pairs p <= q <= (1,1) in N^2.
omega = build_omega(Degree(N2, (1, 1)))
print(f"Omega(1,1): {len(omega)} morphisms, valid={validate(omega).ok}")

# A submonoid of N^2 where two degrees have two minimal upper bounds.
sub = GridSubmonoid(2, ((1, 0), (1, 1), (1, 2)))
mubs = minimal_upper_bounds(Degree(sub, (1, 0)), Degree(sub, (1, 1)), Degree(sub, (3, 3)))
print("minimal upper bounds of (1,0) and (1,1):", sorted(str(d) for d in mubs))

# Two commuting loops, materialized up to degree (2,2).
G = catalog.e3((2, 2))
print(f"\n{G.name}: {G.order}")
fa = is_finitely_aligned(G)
print(f"finitely aligned: {fa.ok}, largest certificate {fa.info['max_certificate']}, "
      f"{len(fa.flags)} pairs touch the window")
print("{b} exhaustive:", is_exhaustive(G, {"b"}))

# Filters of a single edge w -> v.
E1 = catalog.e1()
space = FilterSpace(E1)
for x in space.points:
    print(f"  {space.describe(x):8} ultrafilter={space.is_ultrafilter(x)!s:5} "
          f"boundary={space.is_boundary(x)}")
