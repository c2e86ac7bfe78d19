"""Walk through the Hesse SIC in dimension 3.

Builds the Weyl-Heisenberg group as a generalised Heisenberg group, checks the
clock and shift matrices, then follows the orbit of (0, 1, -1)/sqrt(2):
its overlaps, the clinometric relation, and the symmetries from the
symplectic group.
"""
import numpy as np

from ghgkit.autgrp import enumerate_sp
from ghgkit.bouquet import (Line, classify, clinometric_check, generating_set, orbit_and_stabilizer,
                            overlap_table, symmetry_group)
from ghgkit.ghg import base_case
from ghgkit.schrodinger import RepConfig, rep_matrix

np.set_printoptions(precision=4, suppress=True)

desc = base_case(3)
cfg = RepConfig(desc)
print("A =", desc.A, " B =", desc.B, " C =", desc.C, " s =", cfg.s)

# %% clock and shift
Z = rep_matrix(cfg, np.array([0, 1, 0]))
X = rep_matrix(cfg, np.array([2, 0, 0]))      # h(-1, 0, 0)
print("Z =\n", Z)
print("X =\n", X.real)
print("ZX = w XZ:", np.allclose(Z @ X, np.exp(2j * np.pi / 3) * X @ Z))

# %% the bouquet of the Hesse fiducial
v = np.array([0, 1, -1]) / np.sqrt(2)
b = orbit_and_stabilizer(cfg, Line(v))
print(f"\norbit size {len(b)}, stabilizer order {len(b.stabilizer)}, free: {b.free}")

tab = overlap_table(cfg, b.base)
print("angles off the identity:", tab.angles[1:])
c = classify(cfg, b)
print(f"equiangular: {c.equiangular}, common angle {c.value:.12f}, 1/sqrt(s+1) = {c.expected_value:.12f}")

clin = clinometric_check(cfg, b)
print(f"sum of squared angles {clin.angle_sum:.12f} (expected {clin.expected}), "
      f"eigen-residual {clin.residual:.1e}")

# %% symmetries: which symplectic maps fix the bouquet?
sp = enumerate_sp(desc)
sym = symmetry_group(cfg, b, sp, np.random.default_rng(0))
gens = generating_set(desc, sym)
print(f"\n{len(sym)} of the {len(sp)} symplectic maps preserve the bouquet; generators:")
for g in gens:
    print(np.asarray(g.matrix))

# %% a small perturbation breaks equiangularity; the angle spread grows only
# quadratically here because the Hesse fiducial is a degenerate critical point
w = v + 1e-3 * np.array([1, 1j, 0])
c2 = classify(cfg, orbit_and_stabilizer(cfg, Line(w)))
print(f"\nperturbed: equiangular {c2.equiangular}, angle spread {c2.spread:.2e}")
