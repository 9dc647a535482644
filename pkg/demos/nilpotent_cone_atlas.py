"""Count fixed-point types of the nilpotent cone and order them by wt.

Run with ``python demos/nilpotent_cone_atlas.py [n] [D] [g]``.
"""
import sys

from chainstab.atlas import enumerate_components

args = [int(x) for x in sys.argv[1:4]]
n, D, g = args + [3, 1, 2][len(args):]
atlas = enumerate_components(n, D, g)
print(f"rank {n}, degree {D}, genus {g}: {len(atlas.components)} fixed-point types\n")
for i in atlas.order():
    c = atlas.components[i]
    flag = "" if c.strict else "  (on the boundary)"
    print(f"  wt {str(c.wt):>6}  {c.name:<20} dim {c.stack_dim}  {c.status}{flag}")
print(f"\n{len(atlas.edges)} strict wt comparisons")
