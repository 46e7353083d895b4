"""Wavefunctions of the symmetric Poschl-Teller model in the natural coordinate y = sin(alpha x).

The functions carry the factor sqrt(alpha), so they are unit-normalized
in the original coordinate x. Since dx = dmu(y)/alpha with
dmu(y) = dy/sqrt(1-y^2), inner products in this module use that measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import ladder_coefficients
from .errors import DomainError
from .params import ModelParams1D
from .specfun import chebyshev_rule, gegenbauer_all, jacobi_rule, log_gamma, rule_size
from .spectrum import energy_spt

__all__ = [
    "WaveFunctionSample",
    "psi_ground",
    "psi_n",
    "psi_all",
    "psi_oscillator",
    "gram_matrix",
    "oscillator_gram",
    "ladder_action_check",
    "count_sign_changes",
    "sample_wavefunction",
]


def _check_y(y):
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) >= 1.0):
        raise DomainError("wavefunctions are defined for |y| < 1")
    return y


def _ground_log_prefactor(params):
    nu = params.nu
    return 0.5 * (math.log(params.alpha) + log_gamma(nu + 1.0)
                  - 0.5 * math.log(math.pi) - log_gamma(nu + 0.5))


def _log_prefactor(n, params):
    nu = params.nu
    # Gamma(n + 2 nu) in the denominator; it reduces to the ground-state constant at n = 0
    return (nu * math.log(2.0) + log_gamma(nu)
            + 0.5 * (math.log(params.alpha) + log_gamma(n + 1.0) + math.log(n + nu)
                     - math.log(2.0 * math.pi) - log_gamma(n + 2.0 * nu)))


def _scalar_or_array(val, y):
    return float(val) if np.ndim(y) == 0 else val


def _polynomial_part(yy, n_max, params):
    """Normalization constant times C_k^nu(y), without the (1-y^2) power."""
    pref = np.array([_log_prefactor(k, params) for k in range(n_max + 1)])
    return np.exp(pref).reshape((-1,) + (1,) * yy.ndim) * gegenbauer_all(n_max, params.nu, yy)


def psi_ground(y, params: ModelParams1D):
    yy = _check_y(y)
    val = np.exp(_ground_log_prefactor(params) + 0.5 * params.nu * np.log1p(-yy * yy))
    return _scalar_or_array(val, y)


def psi_all(y, n_max: int, params: ModelParams1D, exponent: float | None = None) -> np.ndarray:
    """psi_k(y) for k = 0..n_max, shape (n_max+1,) + y.shape.

    ``exponent`` replaces nu/2 as the power of (1 - y^2); used for the oscillator states.
    """
    yy = _check_y(y)
    power = 0.5 * params.nu if exponent is None else exponent
    pref = np.array([_log_prefactor(k, params) for k in range(n_max + 1)])
    pref = pref.reshape((-1,) + (1,) * yy.ndim)
    # prefactor and weight combined in log space so large nu cannot overflow either one
    return np.exp(pref + power * np.log1p(-yy * yy)) * gegenbauer_all(n_max, params.nu, yy)


def psi_n(y, n: int, params: ModelParams1D):
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return _scalar_or_array(psi_all(y, n, params)[n], y)


def psi_oscillator(y, n: int, params: ModelParams1D):
    """Oscillator state: psi_n with (1-y^2) raised to (nu + gamma/beta)/2."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    power = 0.5 * (params.nu + params.gamma / params.beta)
    return _scalar_or_array(psi_all(y, n, params, exponent=power)[n], y)


def gram_matrix(n_max: int, params: ModelParams1D, method: str = "chebyshev",
                size: int | None = None) -> np.ndarray:
    """<psi_m|psi_n> under dx = dmu(y)/alpha, for m, n <= n_max.

    ``chebyshev`` absorbs (1-y^2)^nu into the integrand of a Gauss-Chebyshev
    rule; ``jacobi`` uses the Gauss rule for (1-y^2)^(nu-1/2), which is exact.
    """
    nu = params.nu
    if method == "chebyshev":
        rule = chebyshev_rule(size or rule_size(n_max, nu))
        vals = psi_all(rule.nodes, n_max, params)
    elif method == "jacobi":
        rule = jacobi_rule(size or (n_max + 2), nu - 0.5, nu - 0.5)
        vals = _polynomial_part(rule.nodes, n_max, params)
    else:
        raise ValueError(f"unknown quadrature method {method!r}")
    return (vals * rule.weights) @ vals.T / params.alpha


def oscillator_gram(n_max: int, params: ModelParams1D, size: int | None = None) -> np.ndarray:
    """Oscillator-state overlaps under (1-y^2)^(-gamma/beta) dmu(y)/alpha."""
    power = 0.5 * (params.nu + params.gamma / params.beta)
    rule = chebyshev_rule(size or rule_size(n_max, params.nu))
    vals = psi_all(rule.nodes, n_max, params, exponent=power)
    w = rule.weights * (1.0 - rule.nodes**2) ** (-params.gamma / params.beta)
    return (vals * w) @ vals.T / params.alpha


def ladder_action_check(n: int, params: ModelParams1D, grid=2001, cutoff: float = 0.999) -> float:
    """Max deviation between psi_n and the raising operator applied to psi_{n-1}.

    The raising operator acts in y-space as
    (y g(E) - alpha^2 (1-y^2) d/dy + alpha^2 y/2) / (alpha^2 kappa_n),
    times (sqrt(2E)+alpha)/sqrt(2E), with E = E_{n-1} and
    g(E) = alpha sqrt(2E) - alpha^2/2. The derivative is a second-order
    finite difference on ``grid`` (a point count over (-1, 1) or explicit nodes).
    Points with |y| > ``cutoff`` are left out of the maximum.
    """
    if n < 1:
        raise DomainError(f"ladder action needs n >= 1, got {n}")
    if np.ndim(grid) == 0:
        m = int(grid)
        y = np.linspace(-1.0, 1.0, m + 2)[1:-1]
    else:
        y = _check_y(grid)
    a = params.alpha
    a2 = a * a
    e_prev = energy_spt(n - 1, params)
    root = math.sqrt(2.0 * e_prev)
    g = a * root - 0.5 * a2
    kappa = ladder_coefficients(n, params.nu).kappa[n]
    prev = psi_n(y, n - 1, params)
    dprev = np.gradient(prev, y, edge_order=2)
    raised = (y * g * prev - a2 * (1.0 - y * y) * dprev + 0.5 * a2 * y * prev)
    raised *= (root + a) / root / (a2 * kappa)
    target = psi_n(y, n, params)
    keep = np.abs(y) <= cutoff
    return float(np.max(np.abs(raised - target)[keep]))


def count_sign_changes(values) -> int:
    v = np.asarray(values, dtype=float)
    s = np.sign(v[v != 0.0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


@dataclass(frozen=True)
class WaveFunctionSample:
    n: int
    nu: float
    grid: np.ndarray
    values: np.ndarray
    model: str


def sample_wavefunction(n: int, params: ModelParams1D, samples: int = 101,
                        model: str = "spt") -> WaveFunctionSample:
    """Values on ``samples`` equally spaced interior points of (-1, 1), symmetric about 0."""
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    y = np.linspace(-1.0, 1.0, samples + 2)[1:-1]
    if model == "spt":
        vals = psi_n(y, n, params)
    elif model == "oscillator":
        vals = psi_oscillator(y, n, params)
    else:
        raise ValueError(f"unknown model {model!r}")
    return WaveFunctionSample(n=n, nu=params.nu, grid=y, values=np.asarray(vals), model=model)
