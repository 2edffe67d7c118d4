"""The Kinoshita-Terasaka knot and its Conway mutant.

Rotating an inner tangle of 11n_42 gives 11n_34.  The Jones polynomial
cannot see the change, while the DT code can.
"""

from knotcrypt import default_table
from knotcrypt.codes import canonical_dt, extract_dt, format_dt
from knotcrypt.diagram import is_isomorphic
from knotcrypt.invariants import jones, state_sum_peak
from knotcrypt.tangles import RotationKind, mutate

table = default_table()
kt, conway = table["11n_42"], table["11n_34"]
partner, rotation = kt.mutant
print(f"{kt.name}: inner tangle on crossings {sorted(kt.inner)}, designated rotation {rotation.letter}")

for r in RotationKind:
    m = mutate(kt.tangle, r)
    same = "same Jones" if jones(m) == jones(kt.pd) else "Jones differs"
    print(f"  rotation {r.letter}: {format_dt(extract_dt(m))}  ({same})")

m = mutate(kt.tangle, rotation)
print()
print(f"mutant is the {partner} table diagram:", is_isomorphic(m, conway.pd))
print("Jones of", kt.name, ":", jones(kt.pd))
print("Jones of", conway.name, ":", jones(conway.pd))
print("canonical codes differ:", canonical_dt(kt.pd) != canonical_dt(conway.pd))
print("largest number of partial states while summing:", state_sum_peak(kt.pd))
