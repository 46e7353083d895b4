import math

import numpy as np
import pytest

from mlqm.ddim import (ddim_build_ladder, ddim_check_ladder, ddim_derive, ddim_energy_full, ddim_energy_pt,
                       ddim_energy_route, ddim_gram, ddim_ground_roots, ddim_phi, ddim_phi_unfactorized,
                       ddim_wavefunction, ddim_wavefunction_swapped, magnetic_degeneracy, pt_level)
from mlqm.errors import DomainError
from mlqm.oracle import pt_eigenfunctions, solve_ddim_pt
from mlqm.params import derive_params

FD_POINTS = [(3, 0, 0.2, 0.0), (3, 2, 0.05, 0.02), (5, 1, 0.2, 0.03)]
ROUTE_GRID = [(D, l, b, bp) for D in (3, 5) for l in (0, 1, 2) for b in (0.05, 0.2) for bp in (0.0, 0.03)]


def test_derive_d3_l0():
    p = ddim_derive(3, 0, 1.0, 1.3, 0.2)
    assert p.j == 0 and p.mu == 1.0 and p.mu * (p.mu - 1) == 0
    assert p.nu * (p.nu - 1) == pytest.approx(1 / (1.3**2 * 0.04), rel=1e-13)
    assert p.C == pytest.approx((p.nu - 0.5) ** 2 - (p.mu - 0.5) ** 2, rel=1e-12)
    assert p.Q == pytest.approx((p.nu - 0.5) ** 2 + (p.mu - 0.5) ** 2 - 0.5, rel=1e-12)
    assert p.d == pytest.approx(0.5 * (p.nu + p.mu))


def test_derive_d3_l2():
    p = ddim_derive(3, 2, beta=0.05)
    assert p.j == 2 and p.mu == 3 and p.L2 == 6


def test_reduces_to_1d():
    p = ddim_derive(1, 0, 1.0, 1.0, 0.2)
    q = derive_params(0.2, 1.0)
    assert p.nu == pytest.approx(q.nu, rel=1e-15)
    assert p.alpha == pytest.approx(q.alpha, rel=1e-15)
    assert p.mu == 0.0 and p.z_shift == pytest.approx(1 / 0.4)


def test_derive_errors():
    with pytest.raises(DomainError):
        ddim_derive(3, 0, beta=0.0, beta_prime=0.0)
    with pytest.raises(DomainError):
        ddim_derive(0, 0)
    with pytest.raises(DomainError):
        ddim_derive(3, -1)
    with pytest.raises(DomainError):
        ddim_derive(3, 0, m=0.0)


def test_phi_forms():
    assert ddim_phi(0, 3.0, 2.0) == 0.0
    manual = 1 * 5 * 3.5 * 2.5 * 3.5 / (9 * 2.5)
    assert ddim_phi(1, 3.0, 2.0) == pytest.approx(manual, rel=1e-14)
    for nu, mu in ((3.0, 2.0), (7.3, 1.0), (25.0, 4.0)):
        n = np.arange(1, 60, dtype=float)
        np.testing.assert_allclose(ddim_phi(n, nu, mu), ddim_phi_unfactorized(n + 0.5 * (nu + mu), nu, mu),
                                   rtol=1e-11)
    with pytest.raises(DomainError):
        ddim_phi(0, 1.0, 0.0)
    with pytest.raises(DomainError):
        ddim_phi_unfactorized(1.0, 3.0, 2.0)


def test_phi_mu_one_is_1d_like():
    nu = 4.2
    n = np.arange(1, 20, dtype=float)
    expected = n * (n + nu) * (n + nu - 0.5) * (n + 0.5) / (n + 0.5 * nu) ** 2 / (n + 0.5 * (nu - 1))
    np.testing.assert_allclose(ddim_phi(n, nu, 1.0), expected * (n + 0.5 * (nu + 1)), rtol=1e-13)


def test_ground_roots():
    g = ddim_ground_roots(3.0, 2.0)
    assert g.roots == (0.0, 2.5, 1.0, 0.0, -1.5)
    assert max(g.residuals) < 1e-10
    assert g.at_pole == (False, False, True, False, False)
    assert g.selected == 2.5 and 0.0 in g.rejected
    for nu, mu in ((5.5, 1.0), (12.0, 3.0)):
        assert max(ddim_ground_roots(nu, mu).residuals) < 1e-10


def test_pt_levels():
    assert pt_level(0, 1.0, 3.0, 2.0) == 12.5
    p = ddim_derive(3, 1, beta=0.2)
    e = np.array([ddim_energy_pt(n, p) for n in range(10)])
    np.testing.assert_allclose(np.diff(np.sqrt(2 * e)), 2 * p.alpha, rtol=1e-12)
    np.testing.assert_allclose(np.diff(e, 2), 4 * p.alpha**2, rtol=1e-9)
    with pytest.raises(DomainError):
        pt_level(-1, 1.0, 3.0, 2.0)


def test_radial_index():
    p = ddim_derive(3, 2, beta=0.05)
    with pytest.raises(DomainError, match="incompatible radial excitation"):
        ddim_energy_full(3, 2, p)
    with pytest.raises(DomainError, match="incompatible radial excitation"):
        ddim_energy_route(0, 2, p)
    with pytest.raises(DomainError):
        ddim_energy_route(2, 1, p)


def test_display_undeformed_limit():
    for D, l in ((1, 0), (3, 1), (5, 2)):
        p = ddim_derive(D, l, beta=1e-9, beta_prime=1e-9)
        for n in (l, l + 2, l + 4):
            assert ddim_energy_full(n, l, p) == pytest.approx(n + D / 2, abs=1e-6)


def test_route_matches_1d_at_d1():
    p = ddim_derive(1, 0, beta=0.2)
    q = derive_params(0.2, 1.0)
    from mlqm.spectrum import energy_osc
    for n in (0, 2, 4):
        assert ddim_energy_route(n, 0, p) == pytest.approx(energy_osc(n, q), rel=1e-13)


def test_display_offset_at_beta_prime_zero():
    # without beta' the displayed closed form sits a constant m w^2 beta (D-2)^2 / 8 below the route
    for D in (1, 3, 5):
        for l in (0, 2):
            p = ddim_derive(D, l, 1.0, 1.0, 0.2)
            for n_r in range(5):
                n = 2 * n_r + l
                gap = ddim_energy_route(n, l, p) - ddim_energy_full(n, l, p)
                assert gap == pytest.approx(0.2 * (D - 2) ** 2 / 8, rel=1e-9)


@pytest.mark.xfail(strict=True, reason="displayed closed form differs from the Poschl-Teller route; see README")
@pytest.mark.parametrize("point", ROUTE_GRID)
def test_route_equality(point):
    D, l, b, bp = point
    p = ddim_derive(D, l, 1.0, 1.0, b, bp)
    for n_r in range(9):
        n = 2 * n_r + l
        assert ddim_energy_full(n, l, p) == pytest.approx(ddim_energy_route(n, l, p), rel=1e-10)


@pytest.mark.parametrize("point", FD_POINTS)
def test_fd_levels(point):
    D, l, b, bp = point
    p = ddim_derive(D, l, 1.0, 1.0, b, bp)
    fd = solve_ddim_pt(p, 8000, 6).energies
    exact = np.array([ddim_energy_pt(n, p) for n in range(6)])
    assert np.max(np.abs(fd / exact - 1)) < 1e-4
    shifted = solve_ddim_pt(p, 8000, 2, shifted=True).energies
    assert shifted[0] == pytest.approx(ddim_energy_route(l, l, p), rel=1e-4)


@pytest.mark.parametrize("point", FD_POINTS)
def test_fd_wavefunctions(point):
    D, l, b, bp = point
    p = ddim_derive(D, l, 1.0, 1.0, b, bp)
    sol = pt_eigenfunctions(p.alpha, p.nu, p.mu, 8000, 4)
    y = np.cos(2 * p.alpha * sol.nodes)
    for n_r in range(4):
        psi = ddim_wavefunction(y, n_r, p)
        v = sol.vectors[:, n_r] * np.sign(sol.vectors[:, n_r] @ psi)
        assert math.sqrt(np.sum((v - psi) ** 2) * sol.step) < 1e-3


def test_gram_and_swap():
    p = ddim_derive(3, 2, beta=0.05, beta_prime=0.02)
    assert np.max(np.abs(ddim_gram(15, p) - np.eye(16))) < 1e-10
    t = np.linspace(-0.95, 0.95, 39)
    for n_r in range(6):
        np.testing.assert_allclose(ddim_wavefunction_swapped(t, n_r, p),
                                   (-1) ** n_r * ddim_wavefunction(-t, n_r, p), rtol=1e-12, atol=1e-14)
    with pytest.raises(DomainError):
        ddim_wavefunction(1.0, 0, p)


@pytest.mark.parametrize("point", [(3, 0, 0.2, 0.0), (3, 2, 0.05, 0.02), (5, 1, 0.2, 0.03), (4, 3, 0.1, 0.01)])
def test_ladder_residuals(point):
    D, l, b, bp = point
    p = ddim_derive(D, l, 1.0, 1.0, b, bp)
    res = ddim_check_ladder(ddim_build_ladder(64, 40, p))
    held = {k: v for k, v in res.items() if not k.endswith("(as displayed)")}
    assert max(held.values()) < 1e-10, held
    assert res["[H,k] (as displayed)"] > 1e-3
    assert res["[H,a] right (as displayed)"] > 1e-3


def test_ladder_validation():
    p = ddim_derive(3, 0, beta=0.2)
    with pytest.raises(DomainError):
        ddim_build_ladder(12, 8, p)
    with pytest.raises(DomainError):
        ddim_build_ladder(64, 60, p)


def test_degeneracy():
    assert [magnetic_degeneracy(3, l) for l in range(5)] == [1, 3, 5, 7, 9]
    assert [magnetic_degeneracy(2, l) for l in range(4)] == [1, 2, 2, 2]
    assert magnetic_degeneracy(4, 2) == 9
    assert magnetic_degeneracy(1, 1) == 1 and magnetic_degeneracy(1, 2) == 0
