"""Finite-difference ground truth for the closed-form results.

Eigenproblems are second-order central differences on a cell-centred grid:
the first and last nodes sit half a step inside the walls, so potentials
with poles at the walls are never evaluated there. Boundary conditions act
through a mirrored ghost node, which puts the Dirichlet zero on the wall itself. Matrices are real
symmetric tridiagonal and solved with LAPACK's tridiagonal routines.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import sparse
from scipy.linalg import eigh_tridiagonal

from .errors import ComputationError, DomainError
from .params import ModelParams1D
from .spectrum import Spectrum

__all__ = [
    "FdProblem",
    "FdSolution",
    "solve_fd",
    "solve_spt",
    "solve_pt",
    "pt_eigenfunctions",
    "solve_ddim_pt",
    "spt_eigenfunctions_x",
    "CommutatorReport",
    "momentum_grid_commutator_check",
    "convergence_order",
    "recommended_grid",
]


@dataclass(frozen=True)
class FdProblem:
    """-(kinetic) d^2/dq^2 + potential(q) on (lo, hi).

    ``left_boundary`` is "dirichlet" or "neumann"; the right wall is always Dirichlet.
    """

    lo: float
    hi: float
    potential: Callable[[np.ndarray], np.ndarray]
    grid_size: int
    kinetic: float = 0.5
    left_boundary: str = "dirichlet"

    def __post_init__(self):
        if self.grid_size < 64:
            raise DomainError(f"grid_size must be >= 64, got {self.grid_size}")
        if not self.hi > self.lo:
            raise DomainError("empty domain")
        if self.left_boundary not in ("dirichlet", "neumann"):
            raise DomainError(f"unknown boundary {self.left_boundary!r}")

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / self.grid_size

    @property
    def nodes(self) -> np.ndarray:
        return self.lo + (np.arange(self.grid_size) + 0.5) * self.step


@dataclass(frozen=True)
class FdSolution:
    energies: np.ndarray
    nodes: np.ndarray
    vectors: np.ndarray | None  # columns, sum(v**2) * step == 1, sign arbitrary
    step: float


def solve_fd(problem: FdProblem, n_levels: int, vectors: bool = False) -> FdSolution:
    n = problem.grid_size
    if not 1 <= n_levels <= n:
        raise DomainError(f"n_levels must lie in [1, {n}], got {n_levels}")
    h = problem.step
    q = problem.nodes
    v = np.asarray(problem.potential(q), dtype=float)
    if not np.all(np.isfinite(v)):
        raise ComputationError("potential is not finite at an interior grid node")
    c = problem.kinetic / (h * h)
    # ghost nodes mirror the first/last node: odd for a zero on the wall, even for zero slope
    diag = 2.0 * c + v
    diag[-1] += c
    diag[0] += -c if problem.left_boundary == "neumann" else c
    off = np.full(n - 1, -c)
    try:
        if vectors:
            w, vec = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_levels - 1))
            vec = vec / math.sqrt(h)
        else:
            w = eigh_tridiagonal(diag, off, eigvals_only=True, select="i",
                                 select_range=(0, n_levels - 1))
            vec = None
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ComputationError(f"tridiagonal eigensolver failed: {exc}") from exc
    return FdSolution(energies=np.asarray(w), nodes=q, vectors=vec, step=h)


def recommended_grid(nu: float, floor: int = 64) -> int:
    """Grid size holding the ground-level error of :func:`solve_spt` near 1e-4 in absolute terms.

    The ground state narrows like 1/sqrt(nu) relative to the box, and the
    error at 60 sqrt(nu) nodes was measured as about 8.6e-5 for beta from 1e-2 to 1e-4.
    """
    return max(floor, int(math.ceil(60.0 * math.sqrt(nu))))


def _spt_problem(params: ModelParams1D, grid_size: int) -> FdProblem:
    sb = math.sqrt(params.beta)
    half = 0.5 * math.pi / sb
    b = params.beta
    return FdProblem(lo=-half, hi=half, grid_size=grid_size,
                     potential=lambda rho: np.tan(sb * rho) ** 2 / (2.0 * b),
                     kinetic=0.5 * params.omega**2)


def solve_spt(params: ModelParams1D, grid_size: int, n_levels: int) -> Spectrum:
    """Lowest levels of -(omega^2/2) d^2/drho^2 + tan^2(sqrt(beta) rho)/(2 beta).

    This is the Poschl-Teller Hamiltonian minus 1/(2 beta), so the levels
    approximate the oscillator energies directly.
    """
    sol = solve_fd(_spt_problem(params, grid_size), n_levels)
    return Spectrum(sol.energies, "oracle", params)


def spt_eigenfunctions_x(params: ModelParams1D, grid_size: int, n_levels: int):
    """FD eigenvectors rescaled to x = rho/omega.

    Returns (y, vectors, dx): y = sin(alpha x) at the grid nodes and columns
    normalized so that sum(v**2) * dx == 1.
    """
    sol = solve_fd(_spt_problem(params, grid_size), n_levels, vectors=True)
    w = params.omega
    y = np.sin(math.sqrt(params.beta) * sol.nodes)
    return y, sol.vectors * math.sqrt(w), sol.step / w


def _pt_problem(alpha, nu, mu, grid_size):
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if nu < 1.0:
        raise DomainError(f"nu must be >= 1 for the Dirichlet wall at pi/(2 alpha), got {nu}")
    if not (mu == 0.0 or mu >= 1.0):
        raise DomainError(f"mu must be 0 or >= 1, got {mu}")
    c_nu = 0.5 * alpha**2 * nu * (nu - 1.0)
    c_mu = 0.5 * alpha**2 * mu * (mu - 1.0)

    def potential(x):
        v = c_nu / np.cos(alpha * x) ** 2
        if c_mu != 0.0:
            v = v + c_mu / np.sin(alpha * x) ** 2
        return v

    return FdProblem(lo=0.0, hi=0.5 * math.pi / alpha, potential=potential, grid_size=grid_size,
                     left_boundary="neumann" if mu == 0.0 else "dirichlet")


def solve_pt(alpha: float, nu: float, mu: float, grid_size: int, n_levels: int) -> np.ndarray:
    """Levels of p^2/2 + (alpha^2/2)(nu(nu-1)/cos^2 + mu(mu-1)/sin^2)(alpha x) on (0, pi/(2 alpha)).

    ``mu`` must be 0 or at least 1. With mu = 0 the wall at x = 0 is not
    singular and the eigenfunctions are even there, so the left end is Neumann.
    """
    return solve_fd(_pt_problem(alpha, nu, mu, grid_size), n_levels).energies


def pt_eigenfunctions(alpha: float, nu: float, mu: float, grid_size: int, n_levels: int) -> FdSolution:
    """Same problem as :func:`solve_pt`, with eigenvectors normalized in x."""
    return solve_fd(_pt_problem(alpha, nu, mu, grid_size), n_levels, vectors=True)


def solve_ddim_pt(ddim_params, grid_size: int, n_levels: int, shifted: bool = False) -> Spectrum:
    """FD levels of the D-dimensional Poschl-Teller model.

    With ``shifted`` the energy shift of the parameter map is subtracted, so
    the values are on the oscillator's energy scale.
    """
    e = solve_pt(ddim_params.alpha, ddim_params.nu, ddim_params.mu, grid_size, n_levels)
    if shifted:
        e = e - ddim_params.z_shift
    return Spectrum(e, "oracle", ddim_params)


@dataclass(frozen=True)
class CommutatorReport:
    """Interior residuals of the discretized [x, p] against i(1 + beta p^2).

    ``kernel_weight`` compares the row sums of the commutator matrix (its
    action on a constant); ``smooth`` its action on a Gaussian test function.
    """

    kernel_weight: float
    smooth: float
    step: float
    grid_size: int
    p_max: float

    def to_dict(self) -> dict:
        return {"kernel_weight": self.kernel_weight, "smooth": self.smooth,
                "step": self.step, "grid_size": self.grid_size, "p_max": self.p_max}


def momentum_grid_commutator_check(params_or_beta, grid_size: int, p_max: float,
                                   gamma: float | None = None) -> CommutatorReport:
    """Discretize x = (1 + beta p^2) i d/dp + i gamma p and compare [x, p] with i(1 + beta p^2).

    x is written in the symmetric form (i/2){1 + beta p^2, d/dp} - i beta p + i gamma p,
    which equals the operator above and keeps the undeformed commutator exact
    on constants. ``params_or_beta`` is a ModelParams1D or a bare beta (beta = 0 allowed).
    """
    if isinstance(params_or_beta, ModelParams1D):
        beta = params_or_beta.beta
        gamma = params_or_beta.gamma if gamma is None else gamma
    else:
        beta = float(params_or_beta)
        gamma = 0.0 if gamma is None else gamma
    if grid_size < 256:
        raise DomainError(f"grid_size must be >= 256, got {grid_size}")
    if not p_max > 0:
        raise DomainError(f"p_max must be positive, got {p_max}")
    if beta < 0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    p = np.linspace(-p_max, p_max, grid_size)
    h = p[1] - p[0]
    n = grid_size
    d = sparse.diags([np.full(n - 1, -0.5 / h), np.full(n - 1, 0.5 / h)], [-1, 1], format="csr")
    q = sparse.diags(1.0 + beta * p * p)
    pm = sparse.diags(p)
    x = 0.5j * (q @ d + d @ q) + 1j * (gamma - beta) * pm
    comm = (x @ pm - pm @ x).tocsr()
    lo, hi = n // 4, n - n // 4
    target = 1j * (1.0 + beta * p * p)
    ones = np.ones(n)
    kernel = np.max(np.abs((comm @ ones - target * ones)[lo:hi]))
    f = np.exp(-0.5 * (p / (0.25 * p_max)) ** 2)
    smooth = np.max(np.abs((comm @ f - target * f)[lo:hi]))
    return CommutatorReport(kernel_weight=float(kernel), smooth=float(smooth), step=float(h),
                            grid_size=n, p_max=float(p_max))


def convergence_order(steps, errors) -> float:
    """Least-squares slope of log(error) against log(step)."""
    steps = np.asarray(steps, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if steps.size < 2 or steps.size != errors.size:
        raise DomainError("need at least two (step, error) pairs")
    if np.any(errors <= 0) or np.any(steps <= 0):
        raise ComputationError("convergence fit needs positive steps and errors")
    return float(np.polyfit(np.log(steps), np.log(errors), 1)[0])
