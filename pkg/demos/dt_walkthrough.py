"""Walk the cinquefoil 5_1 from its basepoint and build its DT code by hand.

Each crossing is met twice, once at an odd step and once at an even one.
The code lists the even partner of 1, 3, 5, ..., negated when the even
passage goes under.
"""

from knotcrypt import default_table
from knotcrypt.codes import dt_connected_sum, extract_dt, format_dt, strip_suffix
from knotcrypt.diagram import connected_sum, format_pd, passages

table = default_table()
knot = table["5_1"]
print("PD code:")
print(format_pd(knot.pd))

steps = {}
for label, p in enumerate(passages(knot.pd), start=1):
    side = "over " if p.over else "under"
    print(f"  step {label:2d}: {side} at crossing {p.crossing}")
    steps.setdefault(p.crossing, []).append((label, p.over))

pairs = {}
for (a, a_over), (b, b_over) in steps.values():
    odd, (even, even_over) = (a, (b, b_over)) if a % 2 else (b, (a, a_over))
    pairs[odd] = even if even_over else -even
by_hand = tuple(pairs[k] for k in sorted(pairs))
print("pairs:", ", ".join(f"{k}<->{abs(v)}" for k, v in sorted(pairs.items())))
print("by hand:   ", format_dt(by_hand))
print("extract_dt:", format_dt(extract_dt(knot.pd)))

trefoil = table["3_1"]
total = dt_connected_sum(trefoil.dt, knot.dt)
print()
print("3_1 # 5_1 code:     ", format_dt(total))
print("from the diagram:   ", format_dt(extract_dt(connected_sum(trefoil.pd, knot.pd))))
print("strip 5_1 suffix ->", format_dt(strip_suffix(total, knot.dt)))
