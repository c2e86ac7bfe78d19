"""An arithmetic-type group over Q(sqrt 2).

The ideal f = (7, 3 + sqrt 2) has norm 7, so I/fI and its dual are cyclic of
order 7 and the resulting group is a copy of the Weyl-Heisenberg group in
dimension 7 built from number-field data.  Its symplectic automorphisms
correspond to SL_2 over the residue ring O/f = F_7, which has 336 elements.
"""
import numpy as np

from ghgkit.arith import ghg_with_enlarged_centre, parse_config, sl2_correspondence, trace_pairing_build
from ghgkit.autgrp import enumerate_sp
from ghgkit.ghg import centre_and_derived, check_ndc

config = {"min_poly": [-2, 0, 1], "I": ["1", "th"], "frak_f": ["7", "3+th"], "r": None}
tup = parse_config(config)
print("field: th^2 = 2;  N(f) =", tup.frak_f.norm(), "; f =", tup.f)

ag = trace_pairing_build(tup)
desc = ag.desc
print("A =", desc.A, " B =", desc.B, " C =", desc.C, " ND-C:", check_ndc(desc).ok)

# %% the symplectic group and SL_2 over the residue ring
sp = enumerate_sp(desc)
print("|Sp| =", len(sp))
rep = sl2_correspondence(ag)
print(f"|SL2(O/f)| = {rep.sl2_count};  every Sp map has det 1: {rep.sp_dets_one};  "
      f"every det-1 matrix is symplectic: {rep.det_one_symplectic};  "
      f"nothing else is: {rep.others_not_symplectic}")

# %% enlarging the centre keeps the commutator pairing but grows C
big = ghg_with_enlarged_centre(tup, 7 * 7)
st = centre_and_derived(big.desc)
print("\nenlarged centre: C =", big.desc.C, " centre order", st.centre_order, " derived order", st.derived_order)
