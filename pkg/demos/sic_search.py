"""Numerical search for equiangular (SIC) fiducials, then an independent check.

The objective sums (|<v, D v>|^2 - 1/(d+1))^2 over the non-identity
displacements D; a zero is a SIC fiducial.
"""
import time

import numpy as np

from ghgkit.ghg import base_case, even_base_case
from ghgkit.schrodinger import RepConfig, sigma_matrices
from ghgkit.autgrp import sum_group_coords
from ghgkit.search import equiangular_problem, optimize_fiducial, verify_candidate

for d in (4, 5, 6, 7, 8):
    desc = base_case(d) if d % 2 else even_base_case(d)
    cfg = RepConfig(desc)
    problem = equiangular_problem(cfg, seed=1, threads=4)
    t0 = time.perf_counter()
    rep = optimize_fiducial(problem)
    dt = time.perf_counter() - t0
    print(f"d={d}: converged {rep.converged} at restart {rep.best_restart} "
          f"({rep.iterations} iterations, {dt:.2f} s), max |a^2 - 1/(d+1)| = {rep.max_deviation:.1e}")

    # independent check: overlaps from the full displacement matrices
    G = sum_group_coords(desc)
    coords = np.hstack([G, np.zeros((len(G), 1), dtype=np.int64)])
    Ms = sigma_matrices(cfg, coords)
    a2 = np.abs(np.einsum("i,kij,j->k", rep.vector.conj(), Ms, rep.vector)) ** 2
    print(f"      direct overlaps: max deviation {np.max(np.abs(a2[1:] - 1 / (d + 1))):.1e}, "
          f"verdict {verify_candidate(problem, rep.vector)['verdict']}")
