"""Orthogonal polynomials, log-gamma and quadrature on (-1, 1).

Polynomials are evaluated by forward three-term recurrence. All evaluators
accept scalar or array ``y`` and return the same shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

from .errors import DomainError

__all__ = [
    "QuadratureRule",
    "gegenbauer",
    "gegenbauer_all",
    "jacobi",
    "jacobi_all",
    "log_gamma",
    "gegenbauer_log_norm",
    "jacobi_log_norm",
    "gegenbauer_recurrence",
    "jacobi_recurrence",
    "chebyshev_rule",
    "jacobi_rule",
    "rule_size",
]


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str

    def __len__(self):
        return len(self.nodes)

    def integrate(self, values) -> float:
        """Weighted sum of samples taken at ``nodes``."""
        return float(np.dot(self.weights, values))


def _as_float(y):
    return np.asarray(y, dtype=float)


def gegenbauer_all(n_max: int, nu: float, y) -> np.ndarray:
    """C_k^nu(y) for k = 0..n_max, stacked along the first axis."""
    if n_max < 0:
        raise DomainError(f"n must be >= 0, got {n_max}")
    if not nu > 0:
        raise DomainError(f"nu must be > 0, got {nu}")
    y = _as_float(y)
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * nu * y
    for k in range(1, n_max):
        out[k + 1] = (2.0 * (k + nu) * y * out[k] - (k + 2.0 * nu - 1.0) * out[k - 1]) / (k + 1.0)
    return out


def gegenbauer(n: int, nu: float, y):
    """Gegenbauer polynomial C_n^nu(y)."""
    val = gegenbauer_all(n, nu, y)[n]
    return float(val) if np.ndim(y) == 0 else val


def jacobi_all(n_max: int, a: float, b: float, y) -> np.ndarray:
    """P_k^(a,b)(y) for k = 0..n_max, stacked along the first axis."""
    if n_max < 0:
        raise DomainError(f"n must be >= 0, got {n_max}")
    if not (a > -1 and b > -1):
        raise DomainError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    y = _as_float(y)
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 0.5 * ((a + b + 2.0) * y + (a - b))
    for k in range(1, n_max):
        s = 2.0 * k + a + b
        c1 = 2.0 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * (a * a - b * b)
        c3 = s * (s + 1) * (s + 2)
        c4 = 2.0 * (k + a) * (k + b) * (s + 2)
        out[k + 1] = ((c2 + c3 * y) * out[k] - c4 * out[k - 1]) / c1
    return out


def jacobi(n: int, a: float, b: float, y):
    """Jacobi polynomial P_n^(a,b)(y)."""
    val = jacobi_all(n, a, b, y)[n]
    return float(val) if np.ndim(y) == 0 else val


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def gegenbauer_log_norm(n: int, nu: float) -> float:
    """ln of int_{-1}^{1} (1-y^2)^(nu-1/2) [C_n^nu(y)]^2 dy."""
    return (math.log(math.pi) + (1.0 - 2.0 * nu) * math.log(2.0) + log_gamma(n + 2.0 * nu)
            - log_gamma(n + 1.0) - math.log(n + nu) - 2.0 * log_gamma(nu))


def jacobi_log_norm(n: int, a: float, b: float) -> float:
    """ln of int_{-1}^{1} (1-y)^a (1+y)^b [P_n^(a,b)(y)]^2 dy."""
    return ((a + b + 1.0) * math.log(2.0) - math.log(2.0 * n + a + b + 1.0)
            + log_gamma(n + a + 1.0) + log_gamma(n + b + 1.0)
            - log_gamma(n + a + b + 1.0) - log_gamma(n + 1.0))


def gegenbauer_recurrence(n_max: int, nu: float) -> np.ndarray:
    """Off-diagonal of the multiplication-by-y matrix for orthonormal Gegenbauer functions.

    Entry k is <k+1| y |k>, k = 0..n_max-1. The diagonal vanishes by parity.
    """
    k = np.arange(n_max, dtype=float)
    return np.sqrt((k + 1.0) * (k + 2.0 * nu) / (4.0 * (k + nu) * (k + nu + 1.0)))


def jacobi_recurrence(n_max: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal (length n_max+1) and off-diagonal (length n_max) of y for orthonormal Jacobi."""
    k = np.arange(n_max + 1, dtype=float)
    s = 2.0 * k + a + b
    with np.errstate(invalid="ignore", divide="ignore"):
        diag = (b * b - a * a) / (s * (s + 2.0))
    diag[0] = (b - a) / (a + b + 2.0)
    kk = k[1:]
    s1 = 2.0 * kk + a + b
    off = (2.0 / s1) * np.sqrt(kk * (kk + a) * (kk + b) * (kk + a + b) / ((s1 - 1.0) * (s1 + 1.0)))
    return diag, off


def chebyshev_rule(n: int) -> QuadratureRule:
    """Gauss-Chebyshev rule for the weight (1-y^2)^(-1/2), exact through degree 2n-1."""
    if n < 1:
        raise DomainError(f"rule size must be >= 1, got {n}")
    i = np.arange(n, 0, -1)
    nodes = np.cos((2.0 * i - 1.0) * np.pi / (2.0 * n))
    weights = np.full(n, np.pi / n)
    return QuadratureRule(nodes=nodes, weights=weights, kind="chebyshev-first-kind")


def jacobi_rule(n: int, a: float, b: float) -> QuadratureRule:
    """Gauss-Jacobi rule for the weight (1-y)^a (1+y)^b, exact through degree 2n-1."""
    if n < 1:
        raise DomainError(f"rule size must be >= 1, got {n}")
    nodes, weights = roots_jacobi(n, a, b)
    order = np.argsort(nodes)
    return QuadratureRule(nodes=nodes[order], weights=weights[order], kind="jacobi-weighted")


def rule_size(n_max: int, nu: float) -> int:
    """Default Chebyshev rule size for integrands carrying a (1-y^2)^nu factor.

    For non-integer nu the integrand is not a polynomial and the error decays
    only like (n_max/N)**(2 nu + 1), so a floor targeting ~1e-12 is applied on top of
    the polynomial-degree count.
    """
    degree_based = int(math.ceil(4.0 * (n_max + nu))) + 32
    algebraic = int(math.ceil((n_max + 8) * 10.0 ** (14.0 / (2.0 * nu + 1.0))))
    return max(degree_based, min(algebraic, 1 << 18))
