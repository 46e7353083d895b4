"""D-dimensional levels: the Poschl-Teller route, its FD check, and the closed form.

The closed form evaluated literally sits below the route by a constant; at
beta' = 0 that constant is m omega^2 beta (D-2)^2 / 8.

Run: python demos/ddim_levels.py
"""
from mlqm.ddim import ddim_derive, ddim_energy_full, ddim_energy_pt, ddim_energy_route
from mlqm.oracle import solve_ddim_pt


def main():
    for D, l in [(1, 0), (3, 0), (3, 2), (5, 1)]:
        p = ddim_derive(D, l, beta=0.2)
        fd = solve_ddim_pt(p, 8000, 3).energies
        print(f"D={D} l={l}  nu={p.nu:.4f} mu={p.mu:g}")
        for n_r in range(3):
            n = 2 * n_r + l
            route, full = ddim_energy_route(n, l, p), ddim_energy_full(n, l, p)
            print(f"  n={n:2d}  PT {ddim_energy_pt(n_r, p):10.6f}  FD {fd[n_r]:10.6f}  "
                  f"route {route:9.6f}  closed form {full:9.6f}  gap {route - full:.6f}")
        print(f"  expected gap 0.2 (D-2)^2 / 8 = {0.2 * (D - 2) ** 2 / 8:.6f}")


if __name__ == "__main__":
    main()
