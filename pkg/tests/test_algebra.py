import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mlqm.algebra import (DEFAULT_MARGIN, anticommutator_structure, bose_map_check, build_operator_set,
                          check_algebra, f_structure, finite_rep_condition, ladder_coefficients,
                          number_operator_map, parity_classification, phi, phi_factorized)
from mlqm.errors import ComputationError, ConfigurationError, DomainError
from mlqm.params import derive_params
from mlqm.specfun import chebyshev_rule, rule_size
from mlqm.spectrum import energy_spt
from mlqm.wavefn import psi_all


def test_phi_examples():
    assert phi(0, 3.3) == 0.0
    assert phi(1, 2.0) == pytest.approx(6.0, rel=1e-15)
    assert f_structure(0, 2.0) == pytest.approx(6.0, rel=1e-15)
    assert anticommutator_structure(0, 2.0) == pytest.approx(6.0, rel=1e-15)
    with pytest.raises(DomainError):
        phi(1, 1.0)


@given(st.integers(0, 500), st.floats(1.01, 200.0))
def test_phi_identities(n, nu):
    assert phi(n, nu) == pytest.approx(phi_factorized(n, nu), rel=1e-12, abs=1e-14 * (n + nu + 1) ** 2)
    assert phi(n + 1, nu) - phi(n, nu) == pytest.approx(f_structure(n, nu), rel=1e-10)
    assert phi(n + 1, nu) + phi(n, nu) == pytest.approx(anticommutator_structure(n, nu), rel=1e-10)


def test_f_large_nu():
    assert f_structure(0, 1e6) / 2e6 == pytest.approx(1.0, rel=1e-5)


def test_ladder_coefficients():
    c = ladder_coefficients(50, 2.0)
    assert c.kappa[0] == 0.0 and np.all(c.kappa[1:] > 0)
    assert c.kappa[1] == pytest.approx(math.sqrt(6.0), rel=1e-15)
    assert c.norm[0] == pytest.approx(1.0, rel=1e-15)
    np.testing.assert_allclose(c.norm[1:], 1.0 / np.cumprod(c.kappa[1:]), rtol=1e-12)
    np.testing.assert_allclose(c.kappa**2, phi(np.arange(51.0), 2.0), rtol=1e-12)


def test_ladder_coefficients_underflow():
    c = ladder_coefficients(100, 500.0)
    assert np.all(np.isfinite(c.norm)) and np.all(c.norm > 0)
    big = ladder_coefficients(2000, 500.0)
    assert np.all(np.isfinite(big.kappa)) and np.all(np.isfinite(big.log_norm))
    np.testing.assert_allclose(big.kappa[1:] ** 2, phi(np.arange(1, 2001.0), 500.0), rtol=1e-12)
    with pytest.raises(ComputationError):
        big.norm


def test_operator_set_structure(p02):
    ops = build_operator_set(64, 40, p02)
    np.testing.assert_allclose(np.diag(ops.H).real, [energy_spt(n, p02) for n in range(64)], rtol=1e-15)
    assert np.array_equal(ops.a.conj().T, ops.a_dag)
    np.testing.assert_allclose(np.diag(ops.a_dag @ ops.a).real[:63], phi(np.arange(63.0), p02.nu), rtol=1e-12)
    n_idx = np.arange(64)
    parity = (n_idx[:, None] - n_idx[None, :]) % 2 == 0
    assert np.all(ops.y[parity] == 0)
    assert ops.y[0, 1].real > 0
    blk = ops.block(ops.k)
    assert np.max(np.abs(blk - blk.conj().T)) < 1e-12
    np.testing.assert_allclose(np.diag(ops.H).real, 0.5 * p02.alpha**2 * (np.diag(ops.N).real + p02.nu) ** 2,
                               rtol=1e-14)


def test_y_matrix_against_quadrature(p02):
    ops = build_operator_set(16, 8, p02)
    rule = chebyshev_rule(rule_size(4, p02.nu))
    v = psi_all(rule.nodes, 4, p02)
    y = (v * rule.weights * rule.nodes) @ v.T / p02.alpha
    np.testing.assert_allclose(ops.y[:5, :5].real, y, atol=1e-12)


@pytest.mark.parametrize("beta", [0.05, 0.2, 1.0])
def test_algebra_residuals(beta):
    p = derive_params(beta, 1.0)
    ops = build_operator_set(64, 64 - DEFAULT_MARGIN, p)
    report = check_algebra(ops)
    assert report.residuals["[H,y]"] == 0.0
    assert report.failures(1e-10) == [], report.residuals


def test_perturbed_kappa_is_detected(p02):
    report = check_algebra(build_operator_set(64, 40, p02, kappa_perturbation=1e-6))
    assert "[a,a_dag]-f(H)" in report.failures({"default": 1e-10})
    assert 1e-6 < report.residuals["[a,a_dag]-f(H)"] < 1e-2


def test_operator_set_sizes(p02):
    with pytest.raises(ConfigurationError):
        build_operator_set(8, 4, p02)
    with pytest.raises(ConfigurationError):
        build_operator_set(32, 30, p02)


def test_number_operator_map():
    m = number_operator_map(3.0)
    assert m.roots == (0.0, 3.0, -2.0)
    assert m.selected == 3.0
    assert set(m.rejected) == {0.0, -2.0}
    for nu in (1.5, 5.5249378, 100.0):
        assert number_operator_map(nu).selected == nu


@pytest.mark.parametrize("nu", [1.5, 5.5249378, 100.0])
def test_bose_and_su11_maps(nu):
    p = derive_params(1.0, 1.0 / math.sqrt(nu * (nu - 1)))
    res = bose_map_check(100, p.nu, p)
    assert max(res.values()) < 1e-12, res


def test_finite_representations():
    for k in range(2, 7):
        rep = finite_rep_condition(k, 1.0)
        assert rep.nu == (1 - k) / 2
        assert abs(rep.phi_at_k) < 1e-12
        assert not rep.physical
    assert 1 / finite_rep_condition(2, 1.0).beta == pytest.approx(math.sqrt(3) / 2, rel=1e-15)
    with pytest.raises(DomainError):
        finite_rep_condition(1, 1.0)


def test_parity_classification():
    assert parity_classification(0) == ("even", 0.25)
    assert parity_classification(7) == ("odd", 0.75)
    with pytest.raises(DomainError):
        parity_classification(-1)


def test_report_to_dict(p02):
    d = check_algebra(build_operator_set(32, 16, p02)).to_dict()
    assert d["dim"] == 32 and d["interior"] == 16 and "[y,k]" in d["residuals"]
