"""Closed-form oscillator levels against a finite-difference diagonalization.

Run: python demos/spectrum_vs_oracle.py
"""
import numpy as np

from mlqm.oracle import convergence_order, recommended_grid, solve_spt
from mlqm.params import derive_params
from mlqm.spectrum import energy_osc


def main():
    for beta, omega in [(0.05, 1.0), (0.2, 1.0), (1.0, 0.5)]:
        p = derive_params(beta, omega)
        exact = np.array([energy_osc(n, p) for n in range(11)])
        grids = (1000, 2000, 4000)
        errs = [np.max(np.abs(solve_spt(p, g, 11).energies / exact - 1)) for g in grids]
        order = convergence_order([1 / g for g in grids], errs)
        print(f"beta={beta:<5} omega={omega:<4} nu={p.nu:8.3f}  "
              f"max rel err at 4000: {errs[-1]:.2e}  order {order:.3f}")

    # the ground state narrows as beta shrinks, so the grid has to grow with sqrt(nu)
    print()
    for beta in (1e-2, 1e-3, 1e-4):
        p = derive_params(beta, 1.0)
        g = recommended_grid(p.nu)
        e0 = solve_spt(p, g, 1).energies[0]
        print(f"beta={beta:g}: grid {g:5d}  E0 = {e0:.8f}  closed form {energy_osc(0, p):.8f}")


if __name__ == "__main__":
    main()
