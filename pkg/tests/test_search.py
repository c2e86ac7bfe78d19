import numpy as np
import pytest

from ghgkit.autgrp import sum_group_coords
from ghgkit.bouquet import divisor_orbits
from ghgkit.ghg import base_case, even_base_case
from ghgkit.schrodinger import RepConfig, sigma_matrices
from ghgkit.search import (SearchProblem, angles_squared, equiangular_problem, objective_and_gradient,
                           optimize_fiducial, regular_problem, verify_candidate, _descend, _random_unit)

from conftest import HESSE


def objective_only(problem, v):
    return objective_and_gradient(problem, v / np.linalg.norm(v))[0]


def test_hesse_objective_zero():
    p = equiangular_problem(RepConfig(base_case(3)))
    assert objective_only(p, HESSE) < 1e-18


def test_gradient_matches_finite_differences(rng):
    p = equiangular_problem(RepConfig(base_case(5)))
    h = 1e-6
    for _ in range(3):
        v = _random_unit(rng, 5)
        _, g = objective_and_gradient(p, v)
        fd = np.zeros(5, dtype=complex)
        for k in range(5):
            for unit, part in ((1.0, 1.0), (1j, 1j)):
                e = np.zeros(5, dtype=complex)
                e[k] = unit
                d = (objective_only(p, v + h * e) - objective_only(p, v - h * e)) / (2 * h)
                fd[k] += part * d
        rel = np.max(np.abs(fd - g)) / np.max(np.abs(g))
        assert rel < 1e-5


def test_objective_invariances(rng):
    cfg = RepConfig(base_case(5))
    p = equiangular_problem(cfg)
    v = _random_unit(rng, 5)
    F = objective_only(p, v)
    assert abs(objective_only(p, np.exp(1.3j) * v) - F) < 1e-12
    for M in sigma_matrices(cfg, cfg.desc.random_coords(rng, 5)):
        assert abs(objective_only(p, M @ v) - F) < 1e-12
    assert F > 1e-4


def test_problem_validation():
    cfg = RepConfig(base_case(3))
    with pytest.raises(ValueError, match="clinometric"):
        SearchProblem(cfg, (np.arange(1, 9),), (0.3,))
    with pytest.raises(ValueError, match="partition"):
        SearchProblem(cfg, (np.arange(1, 8),), (0.25,))
    with pytest.raises(ValueError, match="one target"):
        SearchProblem(cfg, (np.arange(1, 9),), (0.25, 0.25))
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        SearchProblem(cfg, (np.arange(1, 5), np.arange(5, 9)), (-0.25, 0.75))


def test_d3_search_converges():
    p = equiangular_problem(RepConfig(base_case(3)), restarts=20, max_iters=2000, tol=1e-16, seed=0)
    rep = optimize_fiducial(p)
    assert rep.converged and rep.objective < 1e-16 and rep.restarts_run <= 20
    assert rep.max_deviation < 1e-7


@pytest.mark.parametrize("d", [5, 7])
def test_sic_search(d):
    rep = optimize_fiducial(equiangular_problem(RepConfig(base_case(d)), seed=0))
    assert rep.converged
    a2 = angles_squared(RepConfig(base_case(d)), rep.vector)
    assert np.max(np.abs(a2[1:] - 1 / (d + 1))) < 1e-7
    assert rep.clinometric_residual < 1e-8


def test_descent_monotone_and_seeded(rng):
    p = equiangular_problem(RepConfig(base_case(5)), max_iters=200, seed=11)
    res = _descend(p, _random_unit(rng, 5), 0)
    assert res.history_monotone
    r1 = optimize_fiducial(p)
    r2 = optimize_fiducial(p)
    assert np.array_equal(r1.vector, r2.vector) and r1.objective == r2.objective


def test_thread_count_does_not_change_result():
    cfg = RepConfig(base_case(5))
    a = optimize_fiducial(equiangular_problem(cfg, seed=3, threads=1))
    b = optimize_fiducial(equiangular_problem(cfg, seed=3, threads=4))
    assert np.array_equal(a.vector, b.vector) and a.to_json() == b.to_json()


def test_regular_mode_even_group():
    # d = 4 (even r, zero-lift section): equiangular targets split over the divisor orbits
    cfg = RepConfig(even_base_case(4))
    orbs = divisor_orbits(cfg.desc)
    p = regular_problem(cfg, [orbs[k] for k in sorted(orbs)], [0.2] * len(orbs), seed=2)
    assert p.section == "zero"
    rep = optimize_fiducial(p)
    assert rep.converged and rep.max_deviation < 1e-7
    assert all(s < 1e-7 for s in rep.orbit_spreads)


def test_verify_candidate():
    cfg = RepConfig(base_case(3))
    p = equiangular_problem(cfg)
    rep = verify_candidate(p, HESSE)
    assert rep["free"] and rep["classification"]["equiangular"] and rep["verdict"]
    assert abs(rep["classification"]["value"] - 0.5) < 1e-12
    rep = verify_candidate(p, np.array([1, 0, 0]))
    assert rep["free"] is False and rep["classification"] is None and rep["verdict"] is False
    assert rep["stabilizer_order"] == 3


def test_objective_zero_iff_targets_met(rng):
    cfg = RepConfig(base_case(5))
    p = equiangular_problem(cfg)
    sic = optimize_fiducial(p).vector
    assert objective_only(p, sic) < 1e-20
    a2 = angles_squared(cfg, sic)
    assert np.max(np.abs(a2[1:] - 1 / 6)) < 1e-9
    v = _random_unit(rng, 5)
    assert objective_only(p, v) > 0 and np.max(np.abs(angles_squared(cfg, v)[1:] - 1 / 6)) > 1e-3
