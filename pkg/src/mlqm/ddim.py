"""Isotropic D-dimensional deformed oscillator and its generalized Poschl-Teller image.

Conventions: hbar = 1. The Poschl-Teller model lives on x in (0, pi/(2 alpha))
with H = p^2/2 + (alpha^2/2)(nu(nu-1)/cos^2(alpha x) + mu(mu-1)/sin^2(alpha x)),
and its natural coordinate is y = cos(2 alpha x). In that variable the
eigenfunctions are (1-y)^(mu/2) (1+y)^(nu/2) P_n^(mu-1/2, nu-1/2)(y); the
labelling with the two Jacobi parameters swapped corresponds to -y.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .specfun import jacobi_all, jacobi_log_norm, jacobi_recurrence, jacobi_rule

__all__ = [
    "DdimParams",
    "DdimLadderSet",
    "GroundRoots",
    "ddim_derive",
    "ddim_phi",
    "ddim_phi_unfactorized",
    "ddim_ground_roots",
    "ddim_energy_pt",
    "pt_level",
    "ddim_energy_route",
    "ddim_energy_full",
    "ddim_build_ladder",
    "ddim_check_ladder",
    "ddim_wavefunction",
    "ddim_wavefunction_swapped",
    "ddim_gram",
    "magnetic_degeneracy",
]


@dataclass(frozen=True)
class DdimParams:
    D: int
    l: int
    m: float
    omega: float
    beta: float
    beta_prime: float
    gamma: float
    alpha: float
    j: float
    L2: int
    nu: float
    mu: float
    z_shift: float
    measure_exponent_a: float
    delta: float

    @property
    def C(self) -> float:
        return self.nu * (self.nu - 1.0) - self.mu * (self.mu - 1.0)

    @property
    def Q(self) -> float:
        return self.nu * (self.nu - 1.0) + self.mu * (self.mu - 1.0)

    @property
    def d(self) -> float:
        return 0.5 * (self.nu + self.mu)


def _nu_rhs(D, j, m, omega, beta, beta_prime):
    bs = beta + beta_prime
    return (beta**2 / bs**2 * j * (j + 1.0)
            - beta * beta_prime / bs**2 * (D - 1) / 2.0
            + 1.0 / (m * m * omega * omega * bs * bs))


def ddim_derive(D: int, l: int, m: float = 1.0, omega: float = 1.0, beta: float = 0.1,
                beta_prime: float = 0.0, gamma: float = 0.0) -> DdimParams:
    if int(D) != D or D < 1:
        raise DomainError(f"D must be an integer >= 1, got {D!r}")
    if int(l) != l or l < 0:
        raise DomainError(f"l must be an integer >= 0, got {l!r}")
    for name, val in (("m", m), ("omega", omega)):
        if not (val > 0 and math.isfinite(val)):
            raise DomainError(f"{name} must be positive and finite, got {val!r}")
    if beta < 0 or beta_prime < 0:
        raise DomainError("beta and beta_prime must be >= 0")
    bs = beta + beta_prime
    if not bs > 0:
        raise DomainError("beta + beta_prime must be positive; the undeformed limit is not representable")
    D, l = int(D), int(l)
    j = l + (D - 3) / 2.0
    rhs = _nu_rhs(D, j, m, omega, beta, beta_prime)
    disc = 0.25 + rhs
    if disc < 0:
        raise DomainError(f"nu(nu-1) = {rhs} has no real root")
    nu = 0.5 + math.sqrt(disc)
    mu = j + 1.0
    z_shift = (1.0 / (2.0 * m * bs)
               - m * omega**2 * beta_prime * (beta_prime + 2.0 * beta) / (2.0 * bs)
               * (j * (j + 1.0) + (D - 1) / 2.0))
    return DdimParams(
        D=D, l=l, m=float(m), omega=float(omega), beta=float(beta),
        beta_prime=float(beta_prime), gamma=float(gamma),
        alpha=math.sqrt(bs * m) * omega, j=j, L2=l * (l + D - 2), nu=nu, mu=mu,
        z_shift=z_shift,
        measure_exponent_a=gamma / bs - beta_prime / bs * (D - 1) / 2.0,
        delta=-beta_prime / bs * (D - 1) / 2.0,
    )


def _check_n(n):
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")


def ddim_phi(n, nu: float, mu: float):
    """Factorized a^dagger a eigenvalue on level n (scalar or integer array)."""
    nn = np.asarray(n, dtype=float)
    den = (nn + 0.5 * (nu + mu - 1.0)) ** 2 * (nn + 0.5 * (nu + mu - 2.0))
    if np.any(den == 0.0):
        bad = nn[den == 0.0] if nn.ndim else nn
        raise DomainError(f"phi has a pole at n = {np.atleast_1d(bad)[0]:g} for nu={nu}, mu={mu}")
    val = (nn * (nn + nu + mu - 1.0) * (nn + nu - 0.5) * (nn + mu - 0.5)
           * (nn + 0.5 * (nu + mu)) / den)
    return float(val) if np.ndim(n) == 0 else val


def ddim_phi_unfactorized(s, nu: float, mu: float):
    """The same function written in s = sqrt(2H)/(2 alpha); level n sits at s = n + (nu+mu)/2."""
    ss = np.asarray(s, dtype=float)
    q = nu * (nu - 1.0) + mu * (mu - 1.0)
    c = nu * (nu - 1.0) - mu * (mu - 1.0)
    if np.any(ss == 1.0) or np.any(ss == 0.5):
        raise DomainError("unfactorized phi has poles at s = 1/2 and s = 1")
    val = -0.5 * q * ss / (ss - 1.0) + ss * ss + 0.25 * c * c * ss / ((ss - 1.0) * (2.0 * ss - 1.0) ** 2)
    return float(val) if np.ndim(s) == 0 else val


def _cleared_terms(d, nu, mu):
    """Terms of (d-1)(2d-1)^2 phi(d): finite at every d, zero exactly at the ground offsets."""
    q = nu * (nu - 1.0) + mu * (mu - 1.0)
    c = nu * (nu - 1.0) - mu * (mu - 1.0)
    return (-0.5 * q * d * (2.0 * d - 1.0) ** 2,
            d * d * (d - 1.0) * (2.0 * d - 1.0) ** 2,
            0.25 * c * c * d)


@dataclass(frozen=True)
class GroundRoots:
    roots: tuple
    residuals: tuple  # relative, from the cleared-denominator form
    at_pole: tuple  # True where the rational form is singular (d = 1/2 or d = 1)
    selected: float
    rejected: tuple
    notes: dict = field(default_factory=dict)


def ddim_ground_roots(nu: float, mu: float) -> GroundRoots:
    """The five ground-state offsets d solving phi(N=0) = 0.

    Residuals are evaluated after multiplying through by (d-1)(2d-1)^2 and
    scaled by the largest term, so roots that land on a pole of the rational
    form are still checked.
    """
    roots = (0.0, 0.5 * (nu + mu), 0.5 * (nu + 1.0 - mu), 0.5 * (1.0 - nu + mu), 0.5 * (2.0 - nu - mu))
    residuals, poles = [], []
    for d in roots:
        terms = _cleared_terms(d, nu, mu)
        scale = max(1.0, max(abs(t) for t in terms))
        residuals.append(abs(sum(terms)) / scale)
        poles.append(d in (0.5, 1.0))
    notes = {0.0: "first excited state diverges"}
    return GroundRoots(roots=roots, residuals=tuple(residuals), at_pole=tuple(poles),
                       selected=roots[1], rejected=(0.0,), notes=notes)


def pt_level(n: int, alpha: float, nu: float, mu: float) -> float:
    """Poschl-Teller level 2 alpha^2 (n + (nu+mu)/2)^2."""
    _check_n(n)
    return 2.0 * alpha**2 * (n + 0.5 * (nu + mu)) ** 2


def ddim_energy_pt(n: int, params: DdimParams) -> float:
    return pt_level(n, params.alpha, params.nu, params.mu)


def _radial(n, l, params):
    _check_n(n)
    if l != params.l:
        raise DomainError(f"l = {l} does not match the parameter set (l = {params.l})")
    if n < l or (n - l) % 2:
        raise DomainError(f"incompatible radial excitation: n - l = {n - l} must be even and >= 0")
    return (n - l) // 2


def ddim_energy_route(n: int, l: int, params: DdimParams) -> float:
    """Oscillator level obtained from the Poschl-Teller level minus the energy shift."""
    return ddim_energy_pt(_radial(n, l, params), params) - params.z_shift


def ddim_energy_full(n: int, l: int, params: DdimParams) -> float:
    """Closed-form E_{n,l} of the deformed isotropic oscillator, with n = 2 n_r + l."""
    _radial(n, l, params)
    p = params
    w, m, b, bp, D, j = p.omega, p.m, p.beta, p.beta_prime, p.D, p.j
    h = n + D / 2.0
    root = math.sqrt(1.0 + m * m * w * w * (b * b * j * (j + 1.0)
                                            + (b * b + bp * bp - 2.0 * b * bp * (D - 3)) / 4.0))
    return (w * h * root
            + 0.5 * m * w * w * (b + bp) * h * h
            + 0.25 * m * w * w * bp * D
            + 0.5 * m * w * w * (b - bp) * (j * (j + 1.0) - (D - 1) * (D - 3) / 4.0))


def magnetic_degeneracy(D: int, l: int) -> int:
    """Number of independent degree-l harmonic polynomials in D variables."""
    if D < 1 or l < 0:
        raise DomainError("need D >= 1 and l >= 0")
    if D == 1:
        return 1 if l <= 1 else 0
    return math.comb(l + D - 1, D - 1) - (math.comb(l + D - 3, D - 1) if l >= 2 else 0)


@dataclass(frozen=True)
class DdimLadderSet:
    dim: int
    interior: int
    H: np.ndarray
    y: np.ndarray
    k: np.ndarray
    a: np.ndarray
    a_dag: np.ndarray
    C: float
    Q: float
    d: float
    params: DdimParams

    @property
    def sqrt_2h(self) -> np.ndarray:
        return np.diag(2.0 * self.params.alpha * (np.arange(self.dim) + self.d)).astype(complex)

    def block(self, m):
        return m[: self.interior, : self.interior]


def ddim_build_ladder(dim: int, interior: int, params: DdimParams) -> DdimLadderSet:
    if dim < 16 or not 8 <= interior <= dim - 8:
        raise DomainError(f"need dim >= 16 and 8 <= interior <= dim - 8, got {dim}, {interior}")
    nu, mu = params.nu, params.mu
    n = np.arange(dim, dtype=float)
    phis = ddim_phi(n[1:], nu, mu)
    if np.any(phis <= 0):
        raise DomainError("phi is not positive on the excited levels; no infinite ladder")
    H = np.diag(2.0 * params.alpha**2 * (n + params.d) ** 2).astype(complex)
    diag, off = jacobi_recurrence(dim - 1, mu - 0.5, nu - 0.5)
    y = (np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)).astype(complex)
    k = 1j * (H @ y - y @ H)
    a = np.diag(np.sqrt(phis), 1).astype(complex)
    return DdimLadderSet(dim=dim, interior=interior, H=H, y=y, k=k, a=a, a_dag=a.conj().T,
                         C=params.C, Q=params.Q, d=params.d, params=params)


def _comm(x, y):
    return x @ y - y @ x


def ddim_check_ladder(ls: DdimLadderSet) -> dict[str, float]:
    """Interior max-abs residuals of the D-dimensional ladder identities.

    Keys ending in "(as displayed)" test forms that are expected to fail;
    they are reported so the corrected forms can be compared against them.
    """
    al = ls.params.alpha
    a2 = al * al
    g2 = 4.0 * a2  # (2 alpha)^2
    eye = np.eye(ls.dim)
    H, y, k, a, ad = ls.H, ls.y, ls.k, ls.a, ls.a_dag
    r2h = ls.sqrt_2h
    s = np.arange(ls.dim) + ls.d
    with np.errstate(divide="ignore"):
        central = np.diag(4.0 * a2 * a2 * ls.C / (2.0 * al * np.real(np.diag(r2h)) - 2.0 * a2))
    phi_s = ddim_phi(np.arange(ls.dim, dtype=float), ls.params.nu, ls.params.mu)
    # excited levels only: the ground level may sit on a pole of the rational form
    unfact = np.concatenate([[0.0], ddim_phi_unfactorized(s[1:], ls.params.nu, ls.params.mu)])
    phi_s1 = ddim_phi(np.arange(1, ls.dim + 1, dtype=float), ls.params.nu, ls.params.mu)
    exprs = {
        "[y,k]": _comm(y, k) - 1j * g2 * (eye - y @ y),
        "[H,y]": _comm(H, y) + 1j * k,
        "[H,k]": _comm(H, k) - 1j * g2 * (2.0 * y @ H - 1j * k - a2 * y - a2 * ls.C * eye),
        "[H,k] (as displayed)": _comm(H, k) - 1j * g2 * (2.0 * y @ H - 1j * k + a2 * y) - a2 * ls.C * eye,
        "[H,a] right": _comm(H, a) + a @ (2.0 * al * r2h - 2.0 * a2 * eye),
        "[H,a] left": _comm(H, a) + (2.0 * al * r2h + 2.0 * a2 * eye) @ a,
        "[H,a_dag] left": _comm(H, ad) - (2.0 * al * r2h - 2.0 * a2 * eye) @ ad,
        "[H,a_dag] right": _comm(H, ad) - ad @ (2.0 * al * r2h + 2.0 * a2 * eye),
        "[H,a] right (as displayed)": _comm(H, a) + a @ (2.0 * al * r2h - 2.0 * al * eye),
        "[H,a] left (as displayed)": _comm(H, a) + (2.0 * al * r2h + 2.0 * al * eye) @ a,
        "[sqrt2H,a]": _comm(r2h, a) + 2.0 * al * a,
        "[sqrt2H,a_dag]": _comm(r2h, ad) - 2.0 * al * ad,
        "a_dag a": ad @ a - np.diag(phi_s),
        "a a_dag": a @ ad - np.diag(phi_s1),
        "a_dag a unfactorized": (ad @ a - np.diag(unfact))[1:, 1:],
        "a from y,k": a - (y @ (2.0 * al * r2h + 2.0 * a2 * eye) + 1j * k - central) / g2,
        "a_dag from y,k": ad - ((2.0 * al * r2h + 2.0 * a2 * eye) @ y - 1j * k - central) / g2,
    }
    return {name: float(np.max(np.abs(ls.block(m)))) for name, m in exprs.items()}


def _wf_log_norm(n_r, params):
    # unit norm in x, with dx = dy / (2 alpha sqrt(1-y^2))
    return 0.5 * (math.log(2.0 * params.alpha) - jacobi_log_norm(n_r, params.mu - 0.5, params.nu - 0.5))


def ddim_wavefunction(y, n_r: int, params: DdimParams):
    """Radial Poschl-Teller eigenfunction in y = cos(2 alpha x), unit norm in x."""
    _check_n(n_r)
    yy = np.asarray(y, dtype=float)
    if np.any(np.abs(yy) >= 1.0):
        raise DomainError("wavefunctions are defined for |y| < 1")
    mu, nu = params.mu, params.nu
    poly = jacobi_all(n_r, mu - 0.5, nu - 0.5, yy)[n_r]
    val = np.exp(_wf_log_norm(n_r, params) + 0.5 * mu * np.log1p(-yy) + 0.5 * nu * np.log1p(yy)) * poly
    return float(val) if np.ndim(y) == 0 else val


def ddim_wavefunction_swapped(t, n_r: int, params: DdimParams):
    """(1-t)^(nu/2) (1+t)^(mu/2) P^(nu-1/2, mu-1/2)(t), normalized like :func:`ddim_wavefunction`.

    Equals (-1)^n_r ddim_wavefunction(-t).
    """
    _check_n(n_r)
    tt = np.asarray(t, dtype=float)
    if np.any(np.abs(tt) >= 1.0):
        raise DomainError("wavefunctions are defined for |y| < 1")
    mu, nu = params.mu, params.nu
    poly = jacobi_all(n_r, nu - 0.5, mu - 0.5, tt)[n_r]
    val = np.exp(_wf_log_norm(n_r, params) + 0.5 * nu * np.log1p(-tt) + 0.5 * mu * np.log1p(tt)) * poly
    return float(val) if np.ndim(t) == 0 else val


def ddim_gram(n_max: int, params: DdimParams) -> np.ndarray:
    """Overlaps of ddim_wavefunction for n_r <= n_max under dx, by Gauss-Jacobi quadrature."""
    mu, nu = params.mu, params.nu
    rule = jacobi_rule(n_max + 2, mu - 0.5, nu - 0.5)
    polys = jacobi_all(n_max, mu - 0.5, nu - 0.5, rule.nodes)
    norms = np.exp([_wf_log_norm(k, params) for k in range(n_max + 1)])[:, None]
    vals = norms * polys
    return (vals * rule.weights) @ vals.T / (2.0 * params.alpha)
