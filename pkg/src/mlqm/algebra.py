"""Deformed SU(1,1) ladder algebra of the symmetric Poschl-Teller model.

Operators are realized as truncated matrices in the energy eigenbasis
|psi_n>, n = 0..dim-1. In that basis a and a^dagger are exact shift
matrices and H is diagonal, so a residual of an operator identity on the
interior block measures only formula errors, never discretization error.
Products of banded operators are wrong only in the last row/column of the
truncation, which is why identities are compared on ``[:interior, :interior]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ComputationError, ConfigurationError, DomainError
from .params import ModelParams1D
from .specfun import gegenbauer_recurrence, log_gamma
from .spectrum import energy_spt

__all__ = [
    "LadderCoefficients",
    "OperatorSet",
    "AlgebraReport",
    "NumberOperatorMap",
    "FiniteRepresentation",
    "phi",
    "phi_factorized",
    "f_structure",
    "anticommutator_structure",
    "ladder_coefficients",
    "build_operator_set",
    "check_algebra",
    "number_operator_map",
    "bose_map_check",
    "finite_rep_condition",
    "parity_classification",
    "DEFAULT_MARGIN",
]

DEFAULT_MARGIN = 24


def _require_nu(nu):
    if not nu > 1:
        raise DomainError(f"nu must exceed 1 (pole of phi at n + nu - 1 = 0), got {nu!r}")


def _phi_raw(n, nu, c=None):
    """phi with number-operator offset c (default c = nu), no domain checks."""
    c = nu if c is None else c
    s = n + c
    g = nu * (nu - 1.0)
    return s * s - g / (s - 1.0) - g


def _phi_factorized_raw(n, nu):
    return (n + nu) / (n + nu - 1.0) * n * (n + 2.0 * nu - 1.0)


def phi(n, nu: float):
    """Eigenvalue function of a^dagger a on |n>: (n+nu)^2 - nu(nu-1)/(n+nu-1) - nu(nu-1)."""
    _require_nu(nu)
    return _phi_raw(np.asarray(n, dtype=float), nu) if np.ndim(n) else _phi_raw(float(n), nu)


def phi_factorized(n, nu: float):
    _require_nu(nu)
    return _phi_factorized_raw(np.asarray(n, dtype=float) if np.ndim(n) else float(n), nu)


def f_structure(n, nu: float):
    """Eigenvalue of [a, a^dagger] = f(H) on |n>, where sqrt(2H)/alpha = n + nu."""
    _require_nu(nu)
    s = np.asarray(n, dtype=float) + nu
    val = 1.0 + 2.0 * s + nu * (nu - 1.0) / (s * (s - 1.0))
    return val if np.ndim(n) else float(val)


def anticommutator_structure(n, nu: float):
    """Eigenvalue of {a, a^dagger} on |n>."""
    _require_nu(nu)
    s = np.asarray(n, dtype=float) + nu
    val = 0.5 - nu * (nu - 1.0) * (2.0 * s * s - 1.0) / (s * (s - 1.0)) + 0.5 * (2.0 * s + 1.0) ** 2
    return val if np.ndim(n) else float(val)


_LOG_TINY = math.log(np.finfo(float).tiny)


@dataclass(frozen=True)
class LadderCoefficients:
    """kappa_n with a|n> = kappa_n |n-1>, and N_n with |n> = N_n (a^dagger)^n |0>.

    N_n is kept as ln N_n; it leaves the double range near n = 150.
    """

    kappa: np.ndarray
    log_norm: np.ndarray
    nu: float

    @property
    def norm(self) -> np.ndarray:
        if self.log_norm.size and self.log_norm.min() < _LOG_TINY:
            first = int(np.argmax(self.log_norm < _LOG_TINY))
            raise ComputationError(f"normalization constant underflows at n = {first}; use log_norm")
        return np.exp(self.log_norm)


def ladder_coefficients(n_max: int, nu: float) -> LadderCoefficients:
    _require_nu(nu)
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    n = np.arange(n_max + 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = np.sqrt((n + nu) / (n - 1.0 + nu)) * np.sqrt(n * (n + 2.0 * nu - 1.0))
    kappa[0] = 0.0
    log_norm = np.array([
        0.5 * (math.log(nu) + log_gamma(2.0 * nu) - math.log(nu + k)
               - log_gamma(k + 1.0) - log_gamma(2.0 * nu + k))
        for k in range(n_max + 1)
    ])
    return LadderCoefficients(kappa=kappa, log_norm=log_norm, nu=nu)


@dataclass(frozen=True)
class OperatorSet:
    """Truncated matrices of H, y, k, a, a^dagger, N in the energy eigenbasis."""

    dim: int
    interior: int
    H: np.ndarray
    y: np.ndarray
    k: np.ndarray
    a: np.ndarray
    a_dag: np.ndarray
    N: np.ndarray
    params: ModelParams1D

    @property
    def sqrt_2h(self) -> np.ndarray:
        """sqrt(2H) on the positive branch; H is diagonal and positive."""
        return np.diag(np.sqrt(2.0 * np.real(np.diag(self.H)))).astype(complex)

    def block(self, m: np.ndarray) -> np.ndarray:
        return m[: self.interior, : self.interior]


def _check_sizes(dim, interior, margin=8):
    if dim < 16:
        raise ConfigurationError(f"dim must be at least 16, got {dim}")
    if not (margin <= interior <= dim - margin):
        raise ConfigurationError(
            f"interior must satisfy {margin} <= interior <= dim - {margin}; got dim={dim}, interior={interior}"
        )


def build_operator_set(dim: int, interior: int, params: ModelParams1D,
                       kappa_perturbation: float = 0.0) -> OperatorSet:
    """Matrix realization of the 1D ladder algebra.

    ``kappa_perturbation`` scales every kappa by (1 + eps); it exists to
    confirm that the residual checks detect a corrupted ladder.
    """
    _check_sizes(dim, interior)
    nu = params.nu
    levels = np.arange(dim)
    energies = np.array([energy_spt(n, params) for n in levels])
    H = np.diag(energies).astype(complex)
    kappa = ladder_coefficients(dim - 1, nu).kappa * (1.0 + kappa_perturbation)
    a = np.diag(kappa[1:], k=1).astype(complex)
    off = gegenbauer_recurrence(dim - 1, nu)
    y = (np.diag(off, k=1) + np.diag(off, k=-1)).astype(complex)
    k = 1j * (H @ y - y @ H)
    return OperatorSet(dim=dim, interior=interior, H=H, y=y, k=k, a=a,
                       a_dag=a.conj().T, N=np.diag(levels.astype(float)).astype(complex),
                       params=params)


@dataclass
class AlgebraReport:
    residuals: dict[str, float]
    dim: int
    interior: int
    meta: dict = field(default_factory=dict)

    def max_residual(self) -> float:
        return max(self.residuals.values())

    def failures(self, threshold: float | dict) -> list[str]:
        out = []
        for name, value in self.residuals.items():
            limit = threshold.get(name, threshold.get("default")) if isinstance(threshold, dict) else threshold
            if not value < limit:
                out.append(name)
        return out

    def to_dict(self) -> dict:
        return {"dim": self.dim, "interior": self.interior,
                "residuals": dict(self.residuals), **self.meta}


def _comm(x, y):
    return x @ y - y @ x


def check_algebra(ops: OperatorSet) -> AlgebraReport:
    """Max-abs residual of each ladder-algebra identity over the interior block."""
    p = ops.params
    a2 = p.alpha**2
    nu = p.nu
    H, y, k, a, ad = ops.H, ops.y, ops.k, ops.a, ops.a_dag
    eye = np.eye(ops.dim)
    r2h = ops.sqrt_2h
    g_minus = p.alpha * r2h - 0.5 * a2 * eye
    g_plus = p.alpha * r2h + 0.5 * a2 * eye
    s = np.real(np.diag(r2h)) / p.alpha
    f_h = np.diag(1.0 + 2.0 * s + nu * (nu - 1.0) / (s * (s - 1.0)))
    s_mat = np.diag(s)

    exprs = {
        "[y,k]": _comm(y, k) - 1j * a2 * (eye - y @ y),
        "[H,y]": _comm(H, y) + 1j * k,
        "[H,k]": _comm(H, k) - 1j * a2 * (2.0 * y @ H - 0.25 * a2 * y - 1j * k),
        "[H,a] right": _comm(H, a) + a @ g_minus,
        "[H,a] left": _comm(H, a) + g_plus @ a,
        "[H,a_dag] left": _comm(H, ad) - g_minus @ ad,
        "[H,a_dag] right": _comm(H, ad) - ad @ g_plus,
        "[a,a_dag]-f(H)": _comm(a, ad) - f_h,
        "{a,a_dag}": a @ ad + ad @ a - np.diag(anticommutator_structure(s - nu, nu)),
        "a from y,k": a - (y @ g_plus + 1j * k) / a2,
        "a_dag from y,k": ad - (g_plus @ y - 1j * k) / a2,
        "casimir": s_mat @ (s_mat - eye) - ad @ np.diag(s / (s + 1.0)) @ a - nu * (nu - 1.0) * eye,
    }
    residuals = {name: float(np.max(np.abs(ops.block(m)))) for name, m in exprs.items()}
    return AlgebraReport(residuals=residuals, dim=ops.dim, interior=ops.interior,
                         meta={"beta": p.beta, "omega": p.omega, "nu": nu})


@dataclass(frozen=True)
class NumberOperatorMap:
    """Candidate offsets c in N = sqrt(2H)/alpha - c with phi(0) = 0."""

    roots: tuple[float, float, float]
    rejected: dict[float, str]
    selected: float


def number_operator_map(nu: float, scan: int = 10_000) -> NumberOperatorMap:
    """Solve phi_c(0) = 0 for c and keep the root giving a positive, finite phi_c(n >= 1)."""
    _require_nu(nu)
    roots = (0.0, float(nu), 1.0 - nu)
    n = np.arange(1, scan + 1, dtype=float)
    rejected = {}
    accepted = []
    for c in roots:
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = _phi_raw(n, nu, c)
        if not np.all(np.isfinite(vals)) or np.any(np.abs(n + c - 1.0) < 1e-12):
            bad = int(n[np.argmax(~np.isfinite(vals) | (np.abs(n + c - 1.0) < 1e-12))])
            rejected[c] = f"phi has a pole at n = {bad}"
        elif np.any(vals <= 0):
            bad = int(n[np.argmax(vals <= 0)])
            rejected[c] = f"phi(n) <= 0 at n = {bad} (zero or negative norm)"
        else:
            accepted.append(c)
    if accepted != [float(nu)]:
        raise ComputationError(f"unexpected admissible offsets {accepted} for nu={nu}")
    return NumberOperatorMap(roots=roots, rejected=rejected, selected=float(nu))


def _shift_up(dim, entries):
    """Matrix with entries[n] at (n+1, n)."""
    return np.diag(entries[: dim - 1], k=-1)


def _casimir_deviation(dim, nu, n_max):
    # Entries of K0^2 - K0 - K+K- grow like n^2 and cancel down to nu(nu-1),
    # so the matrices are rebuilt in long double (x87 80-bit where available).
    n = np.arange(dim, dtype=np.longdouble)
    nu_l = np.longdouble(nu)
    b_dag = _shift_up(dim, np.sqrt(n[1:]))
    k_plus = b_dag @ np.diag(np.sqrt(n + 2 * nu_l))
    k_minus = b_dag.T @ np.diag(np.sqrt(n + 2 * nu_l - 1))
    k_zero = np.diag(n + nu_l)
    casimir = k_zero @ k_zero - k_zero - k_plus @ k_minus
    target = nu_l * (nu_l - 1)
    return float(np.max(np.abs(np.diag(casimir)[: n_max + 1] - target)) / abs(target))


def bose_map_check(n_max: int, nu: float, params: ModelParams1D | None = None) -> dict[str, float]:
    """Rebuild the kappa ladder from Bose operators and from SU(1,1) generators.

    Returns relative residuals against the kappa ladder on the first n_max
    states, plus the relative K-Casimir deviation from nu(nu-1) and, when ``params`` is
    given, the deviation of (alpha^2/2)(N+nu)^2 from the closed-form levels.
    """
    _require_nu(nu)
    dim = n_max + 2
    n = np.arange(dim, dtype=float)
    kappa = ladder_coefficients(dim - 1, nu).kappa
    ladder_up = _shift_up(dim, kappa[1:])
    b_dag = _shift_up(dim, np.sqrt(n[1:]))
    b = b_dag.T

    def fn(func):
        return np.diag(func(n))

    # phi(N)/N without the 0/0 at N = 0
    phi_over_n = lambda m: (m + nu) * (m + 2.0 * nu - 1.0) / (m + nu - 1.0)
    k_plus_left = fn(lambda m: np.sqrt(m + 2.0 * nu - 1.0)) @ b_dag
    k_plus = b_dag @ fn(lambda m: np.sqrt(m + 2.0 * nu))
    k_minus = b @ fn(lambda m: np.sqrt(m + 2.0 * nu - 1.0))
    k_minus_left = fn(lambda m: np.sqrt(m + 2.0 * nu)) @ b
    ratio_lo = fn(lambda m: np.sqrt((m + nu) / (m + nu - 1.0)))
    ratio_hi = fn(lambda m: np.sqrt((m + nu + 1.0) / (m + nu)))

    candidates_up = {
        "bose a_dag left": fn(lambda m: np.sqrt(phi_over_n(m))) @ b_dag,
        "bose a_dag right": b_dag @ fn(lambda m: np.sqrt(phi_over_n(m + 1.0))),
        "su11 a_dag left": ratio_lo @ k_plus,
        "su11 a_dag right": k_plus @ ratio_hi,
    }
    candidates_down = {
        "bose a left": fn(lambda m: np.sqrt(phi_over_n(m + 1.0))) @ b,
        "bose a right": b @ fn(lambda m: np.sqrt(phi_over_n(m))),
        "su11 a right": k_minus @ ratio_lo,
        "su11 a left": ratio_hi @ k_minus,
    }
    keep = slice(0, n_max + 1)
    scale = np.where(ladder_up == 0, 1.0, np.abs(ladder_up))[keep, keep]
    out = {}
    for name, m in candidates_up.items():
        out[name] = float(np.max(np.abs(m - ladder_up)[keep, keep] / scale))
    for name, m in candidates_down.items():
        out[name] = float(np.max(np.abs(m - ladder_up.T)[keep, keep] / scale.T))
    out["su11 K+ forms"] = float(np.max(np.abs(k_plus - k_plus_left)[keep, keep] / scale))
    out["su11 K- forms"] = float(np.max(np.abs(k_minus - k_minus_left)[keep, keep] / scale.T))
    out["su11 casimir"] = _casimir_deviation(dim, nu, n_max)
    if params is not None:
        levels = np.array([energy_spt(int(m), params) for m in n[keep]])
        h_from_n = 0.5 * params.alpha**2 * (n[keep] + nu) ** 2
        out["H from N"] = float(np.max(np.abs(h_from_n - levels) / levels))
    return out


@dataclass(frozen=True)
class FiniteRepresentation:
    k: int
    nu: float
    beta: float
    phi_at_k: float
    physical: bool


def finite_rep_condition(k: int, omega: float) -> FiniteRepresentation:
    """nu = (1-k)/2 makes |k> a zero-norm state; the matching beta at given omega.

    Such nu < 1 lies outside the branch realized by the 1D oscillator, so
    ``physical`` is always False.
    """
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k!r}")
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega!r}")
    nu = (1.0 - k) / 2.0
    beta = 2.0 / (omega * math.sqrt(k * k - 1.0))
    return FiniteRepresentation(k=int(k), nu=nu, beta=beta, phi_at_k=float(_phi_raw(float(k), nu)),
                                physical=nu > 1)


def parity_classification(n: int) -> tuple[str, float]:
    """Parity of |n> and the Bargmann index of its SU(1,1) sector."""
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    return ("even", 0.25) if n % 2 == 0 else ("odd", 0.75)
