"""Exact eigenvectors of the clinometric operator in the Base Case.

For odd d the indicator vectors w_j of the subgroups j(Z/d)^2 are swapped
by the operator up to scale, and the combinations u_j are eigenvectors with
eigenvalue d.  Everything here is rational arithmetic.
"""
from fractions import Fraction

from ghgkit.bouquet import base_case_eigenbasis, upsilon_apply_exact
from ghgkit.ghg import base_case

for d in (9, 15, 25):
    desc = base_case(d)
    bc = base_case_eigenbasis(d)
    print(f"d = {d}: orbit sizes", {j: len(o) for j, o in sorted(bc.orbits.items())})
    for j, w in sorted(bc.w.items()):
        j = int(j)
        out = upsilon_apply_exact(desc, [Fraction(int(x)) for x in w])
        scale = {str(out[k][0] / int(bc.w[d // j][k])) for k in range(len(w)) if bc.w[d // j][k]}
        print(f"   Y w_{j} = {', '.join(scale)} * w_{d // j}")
    for j, u in sorted(bc.u.items()):
        out = upsilon_apply_exact(desc, u)
        ok = all(o[0] == d * x and not any(o[1:]) for o, x in zip(out, u))
        print(f"   Y u_{j} = {d} u_{j}: {ok}")
