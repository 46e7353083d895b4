"""Reference values recomputed from the library, each with its provenance.

Provenance labels: ``stated`` values are given in closed form by the source
derivation, ``derived`` values follow by arithmetic or an independent
numerical method, ``trivial`` values are limits or identities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra, ddim, oracle, params, spectrum, specfun, wavefn


@dataclass(frozen=True)
class Entry:
    id: str
    quantity: str
    value: float
    reference: float
    abs_dev: float
    tolerance: float
    provenance: str
    ok: bool


def _entry(id_, quantity, value, reference, tol, provenance, relative=True):
    value, reference = float(value), float(reference)
    dev = abs(value - reference)
    limit = tol * max(1.0, abs(reference)) if relative else tol
    return Entry(id_, quantity, value, reference, dev, limit, provenance, dev <= limit)


def _y01_quadrature(p):
    rule = specfun.chebyshev_rule(specfun.rule_size(1, p.nu))
    vals = wavefn.psi_all(rule.nodes, 1, p)
    return float(np.sum(rule.weights * vals[0] * rule.nodes * vals[1]) / p.alpha)


def reference_values(fast: bool = False) -> list[Entry]:
    out = []
    p02 = params.derive_params(0.2, 1.0)
    nu02 = 0.5 * (1.0 + math.sqrt(101.0))
    add = out.append

    add(_entry("params.nu", "nu at beta=0.2, omega=1", p02.nu, nu02, 1e-14, "derived"))
    add(_entry("params.alpha2", "alpha^2 at beta=0.2, omega=1", p02.alpha**2, 0.2, 1e-14, "derived"))
    add(_entry("params.nu_bw2", "nu at beta*omega=2", params.derive_params(2.0, 1.0).nu,
               0.5 * (1.0 + math.sqrt(2.0)), 1e-14, "derived"))
    add(_entry("params.dx_min", "minimal position uncertainty at beta=0.04",
               params.min_position_uncertainty(0.04), 0.2, 1e-15, "trivial"))
    add(_entry("params.dispersion", "free energy at wavelength 8 sqrt(beta), beta=1",
               params.free_dispersion(8.0, 1.0, 1.0), 0.5, 1e-14, "derived"))

    add(_entry("spectrum.spt1", "E_1 (Poschl-Teller) at beta=0.2", spectrum.energy_spt(1, p02),
               0.1 * (1.0 + nu02) ** 2, 1e-14, "derived"))
    add(_entry("spectrum.spt0", "E_0 = alpha^2 nu^2 / 2", spectrum.energy_spt(0, p02),
               0.5 * p02.alpha**2 * p02.nu**2, 1e-15, "stated"))
    add(_entry("spectrum.osc0", "oscillator E_0 at beta=0.2", spectrum.energy_osc(0, p02),
               0.5 * math.sqrt(1.01) + 0.05, 1e-14, "derived"))
    add(_entry("spectrum.osc_small_beta", "oscillator E_3 at beta=1e-8",
               spectrum.energy_osc(3, params.derive_params(1e-8, 1.0)), 3.5, 1e-7, "trivial", relative=False))
    e = spectrum.spectrum_by_recursion(1, p02).energies
    add(_entry("spectrum.gap", "E_1 - E_0 from the recursion", e[1] - e[0],
               p02.alpha * math.sqrt(2.0 * e[0]) + 0.5 * p02.alpha**2, 1e-13, "derived"))

    add(_entry("specfun.gegenbauer", "C_2^2(0.5)", specfun.gegenbauer(2, 2.0, 0.5), 1.0, 1e-15, "derived"))
    add(_entry("specfun.chebyshev", "int y^2 dy/sqrt(1-y^2), 2-point rule",
               specfun.chebyshev_rule(2).integrate(specfun.chebyshev_rule(2).nodes ** 2),
               math.pi / 2.0, 1e-14, "derived"))
    add(_entry("specfun.lgamma", "ln Gamma(1/2)", specfun.log_gamma(0.5), 0.5 * math.log(math.pi),
               1e-15, "trivial"))

    add(_entry("algebra.phi", "phi(1) at nu=2", algebra.phi(1, 2.0), 6.0, 1e-14, "derived"))
    add(_entry("algebra.f", "f(0) at nu=2", algebra.f_structure(0, 2.0), 6.0, 1e-14, "derived"))
    add(_entry("algebra.kappa1", "kappa_1 at nu=2", algebra.ladder_coefficients(1, 2.0).kappa[1],
               math.sqrt(6.0), 1e-14, "derived"))
    roots = algebra.number_operator_map(3.0).roots
    for i, r in enumerate((0.0, 3.0, -2.0)):
        add(_entry(f"algebra.offset{i}", f"number-operator offset root {i} at nu=3", roots[i], r,
                   1e-15, "stated"))
    add(_entry("algebra.finite_rep_nu", "nu for a zero-norm state at k=3",
               algebra.finite_rep_condition(3, 1.0).nu, -1.0, 1e-15, "derived"))
    add(_entry("algebra.finite_rep_phi", "phi(3) at nu=-1",
               algebra.finite_rep_condition(3, 1.0).phi_at_k, 0.0, 1e-14, "derived", relative=False))
    add(_entry("algebra.finite_rep_beta", "1/beta at k=2, omega=1",
               1.0 / algebra.finite_rep_condition(2, 1.0).beta, 0.5 * math.sqrt(3.0), 1e-14, "stated"))
    ops = algebra.build_operator_set(16, 8, p02)
    add(_entry("algebra.y01", "<psi_0|y|psi_1> recurrence vs quadrature", ops.y[0, 1].real,
               _y01_quadrature(p02), 1e-12, "derived"))

    add(_entry("wavefn.psi0_norm", "ground-state norm", wavefn.gram_matrix(0, p02)[0, 0], 1.0, 1e-10, "derived"))
    add(_entry("wavefn.psi0_peak", "psi_0(0)", wavefn.psi_ground(0.0, p02),
               math.sqrt(p02.alpha * math.gamma(p02.nu + 1.0) / (math.sqrt(math.pi) * math.gamma(p02.nu + 0.5))),
               1e-13, "trivial"))

    d32 = ddim.ddim_derive(3, 2, 1.0, 1.0, 0.05)
    add(_entry("ddim.mu", "mu at D=3, l=2", d32.mu, 3.0, 1e-15, "trivial"))
    d30 = ddim.ddim_derive(3, 0, 1.0, 1.0, 0.2)
    add(_entry("ddim.nu_d3", "nu(nu-1) at D=3, l=0, beta'=0", d30.nu * (d30.nu - 1.0), 1.0 / 0.04,
               1e-13, "derived"))
    g = ddim.ddim_ground_roots(3.0, 2.0)
    for i, r in enumerate((0.0, 2.5, 1.0, 0.0, -1.5)):
        add(_entry(f"ddim.root{i}", f"ground offset root {i} at nu=3, mu=2", g.roots[i], r, 1e-15, "stated"))
        add(_entry(f"ddim.root{i}_residual", f"phi(N=0) at root {i} (cleared form)", g.residuals[i], 0.0,
                   1e-10, "derived", relative=False))
    add(_entry("ddim.phi_dual", "phi(1) at nu=3, mu=2: factorized vs unfactorized",
               ddim.ddim_phi(1, 3.0, 2.0), ddim.ddim_phi_unfactorized(3.5, 3.0, 2.0), 1e-11, "derived"))
    add(_entry("ddim.e0", "2 alpha^2 (nu+mu)^2/4 at nu=3, mu=2, alpha=1", ddim.pt_level(0, 1.0, 3.0, 2.0),
               12.5, 1e-15, "derived"))
    add(_entry("ddim.route", "E_{0,0} closed form vs shifted Poschl-Teller level, D=3, beta=0.2",
               ddim.ddim_energy_full(0, 0, d30), ddim.ddim_energy_route(0, 0, d30), 1e-10, "derived"))

    if not fast:
        add(_entry("oracle.spt0", "FD E_0 at beta=0.2, grid 4000",
                   oracle.solve_spt(p02, 4000, 1).energies[0], spectrum.energy_osc(0, p02), 1e-6, "derived"))
        small = params.derive_params(1e-4, 1.0)
        add(_entry("oracle.small_beta", "FD E_0 at beta=1e-4",
                   oracle.solve_spt(small, oracle.recommended_grid(small.nu), 1).energies[0], 0.5, 1e-4,
                   "trivial", relative=False))
        add(_entry("oracle.pt0", "FD E_0 at nu=3, mu=2, alpha=1, grid 8000",
                   oracle.solve_pt(1.0, 3.0, 2.0, 8000, 1)[0], 12.5, 1e-5, "derived"))
    return out
