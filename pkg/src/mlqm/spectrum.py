"""Closed-form one-dimensional energies and the spectrum-generating recursion."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .params import ModelParams1D

__all__ = [
    "Spectrum",
    "energy_spt",
    "energy_osc",
    "energy_osc_shifted",
    "spectrum_closed_form",
    "spectrum_by_recursion",
    "osc_cross_check_tolerance",
]

SOURCES = ("closed-form", "recursion", "oracle")


@dataclass(frozen=True)
class Spectrum:
    """Energies indexed contiguously from n = 0."""

    energies: np.ndarray
    source: str
    params: object = field(default=None, compare=False)

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown spectrum source {self.source!r}")
        object.__setattr__(self, "energies", np.asarray(self.energies, dtype=float))

    @property
    def entries(self) -> list[tuple[int, float]]:
        return [(n, float(e)) for n, e in enumerate(self.energies)]

    def __len__(self):
        return len(self.energies)

    def is_increasing(self) -> bool:
        return bool(np.all(np.diff(self.energies) > 0))


def _check_level(n):
    if n < 0 or int(n) != n:
        raise DomainError(f"quantum number n must be a non-negative integer, got {n!r}")


def energy_spt(n: int, params: ModelParams1D) -> float:
    """Symmetric Poschl-Teller level (alpha^2/2)(n + nu)^2."""
    _check_level(n)
    return 0.5 * params.alpha**2 * (n + params.nu) ** 2


def energy_osc(n: int, params: ModelParams1D) -> float:
    """Deformed-oscillator level, written without the large 1/(2 beta) cancellation."""
    _check_level(n)
    w, b = params.omega, params.beta
    h = n + 0.5
    return w * h * math.sqrt(1.0 + (w * b) ** 2 / 4.0) + 0.5 * w * w * b * (h * h + 0.25)


def energy_osc_shifted(n: int, params: ModelParams1D) -> float:
    """Same level as :func:`energy_osc`, via the Poschl-Teller level minus 1/(2 beta)."""
    return energy_spt(n, params) - params.energy_shift


def osc_cross_check_tolerance(params: ModelParams1D, n: int, rel: float = 1e-11) -> float:
    """Absolute tolerance for comparing the two oscillator forms.

    The shifted form loses digits to cancellation; the loss scales with
    1/beta, so small beta falls back to an absolute 1e-8/beta budget.
    """
    scale = abs(energy_osc(n, params))
    if params.beta <= 1e-4:
        return max(rel * scale, 1e-8 / params.beta)
    return rel * scale


def spectrum_closed_form(n_max: int, params: ModelParams1D, oscillator: bool = False) -> Spectrum:
    fn = energy_osc if oscillator else energy_spt
    return Spectrum([fn(n, params) for n in range(n_max + 1)], "closed-form", params)


def spectrum_by_recursion(n_max: int, params: ModelParams1D) -> Spectrum:
    """Iterate sqrt(2 E_{n+1}) = sqrt(2 E_n) + alpha from E_0 = alpha^2 nu^2 / 2."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    a = params.alpha
    root = a * params.nu
    energies = [0.5 * root * root]
    for _ in range(n_max):
        root += a
        energies.append(0.5 * root * root)
    return Spectrum(energies, "recursion", params)
