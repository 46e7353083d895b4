import math

import numpy as np
import pytest

from mlqm.errors import DomainError
from mlqm.oracle import (FdProblem, convergence_order, momentum_grid_commutator_check, pt_eigenfunctions,
                         recommended_grid, solve_fd, solve_pt, solve_spt, spt_eigenfunctions_x)
from mlqm.params import derive_params
from mlqm.spectrum import energy_osc, energy_spt


def test_ground_level(p02):
    e = solve_spt(p02, 4000, 1).energies[0]
    assert abs(e / energy_osc(0, p02) - 1) < 1e-6


def test_second_order(pset):
    grids = (1000, 2000, 4000)
    exact = np.array([energy_osc(n, pset) for n in range(11)])
    errs, steps = [], []
    for g in grids:
        errs.append(np.max(np.abs(solve_spt(pset, g, 11).energies - exact)))
        steps.append(1.0 / g)
    assert abs(convergence_order(steps, errs) - 2.0) < 0.2
    assert 3.5 < errs[1] / errs[2] < 4.5


@pytest.mark.parametrize("beta", [1e-2, 1e-3, 1e-4])
def test_small_beta_grid_rule(beta):
    p = derive_params(beta, 1.0)
    e = solve_spt(p, recommended_grid(p.nu), 1).energies[0]
    assert abs(e - energy_osc(0, p)) < 1e-4
    assert abs(e - 0.5) < 1e-4 + 0.5 * beta * 0.5


def test_recommended_grid_floor():
    assert recommended_grid(1.0) == 64
    assert recommended_grid(100.0) == 600


def test_ordering_and_determinism(p02):
    a = solve_spt(p02, 2000, 20).energies
    b = solve_spt(p02, 2000, 20).energies
    assert np.all(np.diff(a) > 0)
    assert np.array_equal(a, b)


def test_parity_alternates(p02):
    y, vec, _ = spt_eigenfunctions_x(p02, 2000, 6)
    for n in range(6):
        v = vec[:, n]
        np.testing.assert_allclose(v[::-1], (-1) ** n * v, atol=1e-8 * np.abs(v).max())


def test_pt_ground_level():
    assert solve_pt(1.0, 3.0, 2.0, 8000, 1)[0] == pytest.approx(12.5, abs=1e-5)


def test_pt_sectors_reproduce_1d(p02):
    # half box with a wall at the centre: mu = 1 gives the odd states, mu = 0 the even ones
    alpha, nu = p02.alpha, p02.nu
    spt = np.array([energy_spt(n, p02) for n in range(12)])
    odd = solve_pt(alpha, nu, 1.0, 4000, 6)
    even = solve_pt(alpha, nu, 0.0, 4000, 6)
    np.testing.assert_allclose(odd, spt[1::2], rtol=1e-5)
    np.testing.assert_allclose(even, spt[0::2], rtol=1e-5)


def test_pt_eigenfunctions_normalized():
    sol = pt_eigenfunctions(1.0, 3.0, 2.0, 2000, 3)
    np.testing.assert_allclose(np.sum(sol.vectors**2, axis=0) * sol.step, 1.0, rtol=1e-12)


def test_pt_domain_errors():
    with pytest.raises(DomainError):
        solve_pt(1.0, 0.5, 2.0, 1000, 1)
    with pytest.raises(DomainError):
        solve_pt(1.0, 3.0, 0.5, 1000, 1)
    with pytest.raises(DomainError):
        solve_pt(-1.0, 3.0, 2.0, 1000, 1)


def test_fd_problem_validation():
    with pytest.raises(DomainError):
        FdProblem(0.0, 1.0, lambda q: 0 * q, 10)
    with pytest.raises(DomainError):
        FdProblem(1.0, 0.0, lambda q: 0 * q, 100)
    with pytest.raises(DomainError):
        FdProblem(0.0, 1.0, lambda q: 0 * q, 100, left_boundary="periodic")
    with pytest.raises(DomainError):
        solve_fd(FdProblem(0.0, 1.0, lambda q: 0 * q, 100), 0)


def test_particle_in_box():
    e = solve_fd(FdProblem(0.0, 1.0, lambda q: 0 * q, 2000), 3).energies
    np.testing.assert_allclose(e, 0.5 * (math.pi * np.arange(1, 4)) ** 2, rtol=1e-5)


def test_momentum_undeformed():
    r = momentum_grid_commutator_check(0.0, 2048, 10.0)
    assert r.kernel_weight < 1e-10


def test_momentum_second_order():
    reports = [momentum_grid_commutator_check(0.2, g, 10.0) for g in (512, 1024, 2048)]
    steps = [r.step for r in reports]
    assert abs(convergence_order(steps, [r.kernel_weight for r in reports]) - 2.0) < 0.2
    assert abs(convergence_order(steps, [r.smooth for r in reports]) - 2.0) < 0.2


def test_momentum_gamma_is_inert():
    a = momentum_grid_commutator_check(0.2, 1024, 10.0)
    b = momentum_grid_commutator_check(0.2, 1024, 10.0, gamma=0.7)
    assert a.kernel_weight == pytest.approx(b.kernel_weight, rel=1e-12, abs=1e-13)
    p = derive_params(0.2, 1.0, 0.3)
    assert momentum_grid_commutator_check(p, 1024, 10.0).to_dict()["grid_size"] == 1024


def test_momentum_validation():
    with pytest.raises(DomainError):
        momentum_grid_commutator_check(0.2, 100, 10.0)
    with pytest.raises(DomainError):
        momentum_grid_commutator_check(-0.1, 1024, 10.0)
    with pytest.raises(DomainError):
        momentum_grid_commutator_check(0.1, 1024, 0.0)


def test_convergence_order_validation():
    assert convergence_order([1, 0.5], [4, 1]) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        convergence_order([1], [1])
