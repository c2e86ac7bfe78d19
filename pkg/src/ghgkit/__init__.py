"""Generalised Heisenberg groups, their Schrodinger representations, bouquets
of lines and arithmetic constructions from number fields."""
from .abelian import FinAbGroup, GroupHom, hnf_rows, quotient_group, smith_decompose
from .ghg import GhgDescriptor, base_case, centre_and_derived, check_ndc, even_base_case
from .schrodinger import RepConfig, character, fourier_matrix, rep_matrix, sigma_matrices, tau_matrices
from .autgrp import Automorphism, SpElement, enumerate_aut0, enumerate_sp, theta_D, weil_solve
from .bouquet import (Line, classify, clinometric_check, orbit_and_stabilizer, overlap_table,
                      upsilon_apply, upsilon_apply_exact)
from .arith import ArithTuple, FracIdeal, NumberFieldOrder, parse_config, trace_pairing_build
from .search import equiangular_problem, optimize_fiducial, regular_problem, verify_candidate

__version__ = "0.1.0"
