import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from mlqm.errors import DomainError
from mlqm.params import (derive_params, free_dispersion, min_position_uncertainty, min_wavelength,
                         minimizing_delta_p, momentum_to_wavevector, uncertainty_bound,
                         wavevector_to_momentum)


def test_reference_point():
    p = derive_params(0.2, 1.0)
    assert p.nu == pytest.approx(0.5 * (1 + math.sqrt(101)), rel=1e-15)
    assert p.alpha**2 == pytest.approx(0.2, rel=1e-14)


def test_beta_omega_two():
    assert derive_params(2.0, 1.0).nu == pytest.approx(0.5 * (1 + math.sqrt(2)), rel=1e-15)


def test_tiny_beta_limit():
    p = derive_params(1e-12, 1.0)
    assert p.nu * math.sqrt(p.beta) * math.sqrt(p.beta) == pytest.approx(1.0, rel=1e-6)


@given(st.floats(1e-6, 1e3), st.floats(1e-3, 1e3))
def test_invariants(beta, omega):
    # nu - 1 ~ 1/(beta omega)^2 is resolved only to eps/(nu - 1) relative
    assume(beta * omega <= 20.0)
    p = derive_params(beta, omega)
    assert p.nu > 1
    assert p.alpha**2 == pytest.approx(omega**2 * beta, rel=1e-14)
    assert p.nu * (p.nu - 1) * p.alpha**2 == pytest.approx(1 / beta, rel=1e-12)


@pytest.mark.parametrize("field,args", [("beta", (0.0, 1.0)), ("beta", (-1.0, 1.0)),
                                        ("omega", (0.2, 0.0)), ("gamma", (0.2, 1.0, -0.1))])
def test_bad_inputs_name_the_field(field, args):
    with pytest.raises(DomainError, match=field):
        derive_params(*args)


def test_min_uncertainty():
    assert min_position_uncertainty(1.0) == 1.0
    assert min_position_uncertainty(0.04) == pytest.approx(0.2, rel=1e-15)
    with pytest.raises(DomainError):
        min_position_uncertainty(0.0)


@pytest.mark.parametrize("mean_p", [0.0, 0.5, 3.0])
def test_uncertainty_minimum(mean_p):
    beta = 0.3
    dp = minimizing_delta_p(mean_p, beta)
    grid = np.linspace(0.2 * dp, 5 * dp, 2001)
    numeric = min(uncertainty_bound(x, mean_p, beta).bound for x in grid)
    best = uncertainty_bound(dp, mean_p, beta).bound
    assert best <= numeric + 1e-12
    if mean_p == 0:
        assert best == pytest.approx(math.sqrt(beta), rel=1e-14)
    else:
        assert best > math.sqrt(beta)


def test_dispersion():
    assert free_dispersion(math.inf, 1.0, 1.0) == 0.0
    assert free_dispersion(8.0, 1.0, 1.0) == pytest.approx(0.5, rel=1e-14)
    assert free_dispersion(min_wavelength(1.0) * (1 + 1e-9), 1.0, 1.0) > 1e8
    with pytest.raises(DomainError, match="below minimal wavelength"):
        free_dispersion(4.0, 1.0, 1.0)
    lam = np.linspace(4.1, 100, 200)
    assert np.all(np.diff([free_dispersion(x, 1.0, 1.0) for x in lam]) < 0)


def test_wavevector_round_trip():
    p = np.linspace(-1e3, 1e3, 4001)
    rho = momentum_to_wavevector(p, 0.1)
    assert np.all(np.diff(rho) > 0)
    np.testing.assert_allclose(momentum_to_wavevector(-p, 0.1), -rho, rtol=0, atol=0)
    np.testing.assert_allclose(wavevector_to_momentum(rho, 0.1), p, rtol=1e-12, atol=1e-12)
    assert momentum_to_wavevector(0.0, 0.1) == 0.0
    assert momentum_to_wavevector(1e-4, 1e-6) == pytest.approx(1e-4, rel=1e-10)
    with pytest.raises(DomainError):
        wavevector_to_momentum(math.pi / (2 * math.sqrt(0.1)), 0.1)
