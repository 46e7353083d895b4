"""Physical parameters of the deformed oscillator and their Poschl-Teller images.

Units: hbar = 1, and the one-dimensional oscillator has unit mass,
H = p**2/2 + omega**2 x**2/2 with [x, p] = i(1 + beta p**2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "ModelParams1D",
    "UncertaintyBound",
    "derive_params",
    "uncertainty_bound",
    "min_position_uncertainty",
    "minimizing_delta_p",
    "min_wavelength",
    "free_dispersion",
    "momentum_to_wavevector",
    "wavevector_to_momentum",
]


def _require_positive(name, value):
    if not (value > 0) or not math.isfinite(value):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class ModelParams1D:
    """Inputs (beta, omega, gamma) and the derived Poschl-Teller constants.

    ``alpha`` is the inverse length scale of the Poschl-Teller box and ``nu``
    the strength parameter, ``V = alpha**2 nu (nu - 1) / (2 cos**2(alpha x))``.
    """

    beta: float
    omega: float
    gamma: float
    alpha: float
    nu: float

    @property
    def energy_shift(self) -> float:
        """Constant 1/(2 beta) separating the oscillator and SPT energies."""
        return 0.5 / self.beta

    @property
    def coupling(self) -> float:
        return self.nu * (self.nu - 1.0)


@dataclass(frozen=True)
class UncertaintyBound:
    delta_p: float
    mean_p: float
    bound: float


def derive_params(beta: float, omega: float, gamma: float = 0.0) -> ModelParams1D:
    _require_positive("beta", beta)
    _require_positive("omega", omega)
    if not (gamma >= 0) or not math.isfinite(gamma):
        raise DomainError(f"gamma must be non-negative and finite, got {gamma!r}")
    alpha = omega * math.sqrt(beta)
    # explicit larger root of nu(nu-1) = 1/(beta omega)**2
    nu = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 / (beta * omega) ** 2))
    return ModelParams1D(beta=float(beta), omega=float(omega), gamma=float(gamma),
                         alpha=alpha, nu=nu)


def uncertainty_bound(delta_p: float, mean_p: float, beta: float) -> UncertaintyBound:
    """Lower bound on the position uncertainty for given momentum statistics."""
    _require_positive("beta", beta)
    _require_positive("delta_p", delta_p)
    bound = 0.5 * (1.0 + beta * delta_p**2 + beta * mean_p**2) / delta_p
    return UncertaintyBound(delta_p=float(delta_p), mean_p=float(mean_p), bound=bound)


def minimizing_delta_p(mean_p: float, beta: float) -> float:
    """Momentum spread at which the position bound is smallest."""
    _require_positive("beta", beta)
    return math.sqrt((1.0 + beta * mean_p**2) / beta)


def min_position_uncertainty(beta: float) -> float:
    _require_positive("beta", beta)
    return math.sqrt(beta)


def min_wavelength(beta: float) -> float:
    _require_positive("beta", beta)
    return 4.0 * math.sqrt(beta)


def free_dispersion(wavelength: float, mass: float, beta: float) -> float:
    """Free-particle energy as a function of wavelength.

    Diverges as the wavelength approaches ``4 sqrt(beta)`` from above.
    """
    _require_positive("beta", beta)
    _require_positive("mass", mass)
    if math.isinf(wavelength) and wavelength > 0:
        return 0.0
    if not wavelength > min_wavelength(beta):
        raise DomainError(
            f"wavelength {wavelength!r} is below minimal wavelength {min_wavelength(beta)!r}"
        )
    t = math.tan(2.0 * math.pi * math.sqrt(beta) / wavelength)
    return t * t / (2.0 * mass * beta)


def momentum_to_wavevector(p, beta: float):
    """Wave-vector rho with p = tan(sqrt(beta) rho)/sqrt(beta). Accepts arrays."""
    _require_positive("beta", beta)
    sb = math.sqrt(beta)
    if np.ndim(p):
        return np.arctan(sb * np.asarray(p, dtype=float)) / sb
    return math.atan(sb * p) / sb


def wavevector_to_momentum(rho, beta: float):
    _require_positive("beta", beta)
    sb = math.sqrt(beta)
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(np.abs(rho_arr) >= math.pi / (2.0 * sb)):
        raise DomainError(f"|rho| must be below pi/(2 sqrt(beta)) = {math.pi / (2.0 * sb)!r}")
    out = np.tan(sb * rho_arr) / sb
    return out if np.ndim(rho) else float(out)
