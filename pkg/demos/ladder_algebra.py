"""Truncated ladder-operator matrices and the residuals of their commutators.

Run: python demos/ladder_algebra.py
"""
from mlqm.algebra import build_operator_set, check_algebra, number_operator_map
from mlqm.params import derive_params


def main():
    p = derive_params(0.2, 1.0)
    ops = build_operator_set(64, 40, p)
    report = check_algebra(ops)
    width = max(map(len, report.residuals))
    for name, value in report.residuals.items():
        print(f"{name:<{width}}  {value:.2e}")

    # one corrupted ladder coefficient is enough to break [a, a_dag] = f(H)
    bad = check_algebra(build_operator_set(64, 40, p, kappa_perturbation=1e-6))
    print("\nwith kappa scaled by 1 + 1e-6:", bad.failures(1e-10))

    m = number_operator_map(p.nu)
    print(f"\nnumber-operator offset: roots {m.roots}, selected {m.selected:.6f} = nu")


if __name__ == "__main__":
    main()
