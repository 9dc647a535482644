"""Walk a rank-(1,1) chain type up the ray and watch what happens at each wall.

Run with ``python demos/rank_two_wall.py``.
"""
from fractions import Fraction

from chainstab import ChainType
from chainstab.hn import bijection_report, enumerate_flip_types
from chainstab.stability import existence_necessary
from chainstab.walls import Segment, walls_on_segment

G = 2
seg = Segment((0, Fraction(5, 2)), (0, 1), 8)
report = walls_on_segment((1, 1), 1, seg)
fmt = lambda v: "(" + ", ".join(map(str, v)) + ")"
print(f"segment {fmt(seg.start)} + t{fmt(seg.direction)}, t <= {seg.t_max}")
for c in report.crossings:
    a = seg.point(c.t)
    print(f"\nt = {c.t}: alpha = {fmt(a)}, wall {c.walls[0]}")
    # the type that changes behaviour at this wall has E_1 of degree 1 - d0 = -(gap-1)/2
    d0 = int((a[1] + 1) / 2)
    t = ChainType((1, 1), (d0, 1 - d0))
    plus = enumerate_flip_types(t, c.walls[0], a, "plus", G, direction=seg.direction)
    minus = enumerate_flip_types(t, c.walls[0], a, "minus", G, direction=seg.direction)
    for name, locus in (("I+", plus), ("I-", minus)):
        for ft in locus.types:
            print(f"  {name} of {t}: {ft.hn_type}  codim {ft.codim}  maximal {ft.maximal}")
    below = existence_necessary(t, a, G, direction=seg.direction, side=-1)
    above = existence_necessary(t, a, G, direction=seg.direction, side=1)
    print(f"  test chains pass below: {bool(below)}, above: {bool(above)}")
    print(f"  opposite types match: {bijection_report(plus, minus).full}")
