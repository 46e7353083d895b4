"""Command-line front end: spectra, wavefunctions, oracle comparisons and verification suites.

Exit codes: 0 success, 1 computational failure, 2 usage error, 3 a
verification residual above its threshold.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import algebra, ddim, oracle, params, spectrum, wavefn
from .errors import ComputationError, ConfigurationError, DomainError

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_THRESHOLD = 0, 1, 2, 3
CONFIG_ENV = "MLQM_DEFAULT_CONFIG"
GLOBAL_KEYS = ("format", "output", "precision")


class UsageError(Exception):
    pass


@dataclass
class Output:
    """A command result: JSON payload plus the flat table used for CSV."""

    payload: dict
    columns: list
    rows: list
    code: int = EXIT_OK
    notes: list = field(default_factory=list)


# ---------------------------------------------------------------- serialization

def _json_value(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return format(x, ".17g") if math.isfinite(x) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_value(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_json_value(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _json_value(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _json_value(obj, 2, 0) + "\n"


def to_csv(columns, rows, precision: int = 12) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format(float(v), f".{precision}g") if isinstance(v, (float, np.floating)) else v
                         for v in row])
    return buf.getvalue()


def _table(command, meta, columns, rows, code=EXIT_OK) -> Output:
    payload = {"command": command, "meta": meta, "columns": list(columns),
               "rows": [dict(zip(columns, r)) for r in rows]}
    return Output(payload=payload, columns=list(columns), rows=rows, code=code)


def _int_list(text):
    try:
        return [int(t) for t in str(text).split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text):
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


# ---------------------------------------------------------------- commands

def _rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


def _spectrum_rows(beta, args):
    p = params.derive_params(beta, args.omega, args.gamma)
    closed = spectrum.spectrum_closed_form(args.n_max, p, oscillator=args.model == "osc").energies
    rec = spectrum.spectrum_by_recursion(args.n_max, p).energies
    if args.model == "osc":
        rec = rec - p.energy_shift
    fd = None
    if args.oracle:
        fd = oracle.solve_spt(p, args.grid, args.n_max + 1).energies
        if args.model == "spt":
            fd = fd + p.energy_shift
    rows = []
    for n in range(args.n_max + 1):
        row = [n, float(closed[n]), float(rec[n]), abs(float(rec[n] - closed[n]))]
        if fd is not None:
            row += [float(fd[n]), abs(float(fd[n] - closed[n])), _rel(float(fd[n]), float(closed[n]))]
        if args.sweep:
            row = [beta] + row
        rows.append(row)
    return p, rows


def cmd_spectrum(args) -> Output:
    columns = ["n", "E_closed", "E_recursion", "abs_dev_recursion"]
    if args.oracle:
        columns += ["E_oracle", "abs_dev_oracle", "rel_dev_oracle"]
    meta = {"model": args.model, "omega": args.omega, "gamma": args.gamma}
    if args.sweep:
        betas = sorted(args.sweep)
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda b: _spectrum_rows(b, args), betas))
        rows = [r for _, rs in results for r in rs]
        columns = ["beta"] + columns
        meta["betas"] = betas
    else:
        p, rows = _spectrum_rows(args.beta, args)
        meta.update({"beta": p.beta, "alpha": p.alpha, "nu": p.nu})
    return _table("spectrum", meta, columns, rows)


def _ddim_params(args, dim_attr="dim"):
    return ddim.ddim_derive(getattr(args, dim_attr), args.l, args.mass, args.omega,
                            args.beta, args.beta_prime, args.gamma)


def cmd_ddim_spectrum(args) -> Output:
    p = _ddim_params(args)
    columns = ["n_r", "n", "E_pt", "E_route", "E_display", "route_rel_dev"]
    rows = []
    for n_r in range(args.n_max + 1):
        n = 2 * n_r + p.l
        route = ddim.ddim_energy_route(n, p.l, p)
        full = ddim.ddim_energy_full(n, p.l, p)
        rows.append([n_r, n, ddim.ddim_energy_pt(n_r, p), route, full, _rel(full, route)])
    meta = {"D": p.D, "l": p.l, "j": p.j, "nu": p.nu, "mu": p.mu, "alpha": p.alpha,
            "z_shift": p.z_shift, "degeneracy": ddim.magnetic_degeneracy(p.D, p.l)}
    return _table("ddim-spectrum", meta, columns, rows)


def cmd_wavefn(args) -> Output:
    p = params.derive_params(args.beta, args.omega, args.gamma)
    if args.gram:
        g = wavefn.gram_matrix(args.n_max, p) if args.model == "spt" else wavefn.oscillator_gram(args.n_max, p)
        dev = g - np.eye(args.n_max + 1)
        off = dev - np.diag(np.diag(dev))
        meta = {"model": args.model, "n_max": args.n_max, "nu": p.nu,
                "max_abs_offdiag": float(np.max(np.abs(off))),
                "max_abs_dev": float(np.max(np.abs(dev)))}
        rows = [[m, n, float(g[m, n])] for m in range(args.n_max + 1) for n in range(args.n_max + 1)]
        out = _table("wavefn-gram", meta, ["m", "n", "overlap"], rows)
        out.payload["matrix"] = g.tolist()
        return out
    model = "spt" if args.model == "spt" else "oscillator"
    sample = wavefn.sample_wavefunction(args.n, p, args.samples, model)
    rows = [[float(y), float(v)] for y, v in zip(sample.grid, sample.values)]
    meta = {"n": args.n, "nu": p.nu, "model": model,
            "sign_changes": wavefn.count_sign_changes(sample.values)}
    return _table("wavefn", meta, ["y", "psi"], rows)


def _load_thresholds(path):
    if path:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(resources.files("mlqm").joinpath("data/verify_thresholds.json").read_text("utf-8"))


def _suite_result(residuals, limits, reported=None):
    failures = []
    for name, value in residuals.items():
        limit = limits.get(name, limits.get("default"))
        if not value < limit:
            failures.append(name)
    return {"residuals": residuals, "thresholds": limits, "failures": failures,
            "reported": reported or {}}


def _momentum_suite(args, limits):
    grids = [args.grid // 4, args.grid // 2, args.grid]
    reports = [oracle.momentum_grid_commutator_check(args.beta, g, args.p_max, gamma=args.gamma) for g in grids]
    residuals = {"kernel_weight": reports[-1].kernel_weight, "smooth": reports[-1].smooth}
    reported = {"grids": grids}
    failures = []
    if args.beta == 0:
        if not residuals["kernel_weight"] < limits["undeformed_kernel_weight"]:
            failures.append("kernel_weight")
    else:
        order = oracle.convergence_order([r.step for r in reports], [r.kernel_weight for r in reports])
        residuals["order"] = order
        if abs(order - limits["order_target"]) > limits["order_tolerance"]:
            failures.append("order")
    return {"residuals": residuals, "thresholds": limits, "failures": failures, "reported": reported}


def cmd_verify(args) -> Output:
    thresholds = _load_thresholds(args.thresholds)
    suites = ["algebra", "bose", "ddim", "momentum-grid"] if args.suite == "all" else [args.suite]
    results = {}
    for suite in suites:
        limits = thresholds[suite]
        if suite == "algebra":
            p = params.derive_params(args.beta, args.omega, args.gamma)
            ops = algebra.build_operator_set(args.dim, args.interior, p, kappa_perturbation=args.perturb_kappa)
            results[suite] = _suite_result(algebra.check_algebra(ops).residuals, limits)
        elif suite == "bose":
            p = params.derive_params(args.beta, args.omega, args.gamma)
            results[suite] = _suite_result(algebra.bose_map_check(args.bose_n_max, p.nu, p), limits)
        elif suite == "ddim":
            dp = ddim.ddim_derive(args.space_dim, args.l, args.mass, args.omega, args.beta,
                                  args.beta_prime, args.gamma)
            res = ddim.ddim_check_ladder(ddim.ddim_build_ladder(args.dim, args.interior, dp))
            checked = {k: v for k, v in res.items() if "as displayed" not in k}
            shown = {k: v for k, v in res.items() if "as displayed" in k}
            results[suite] = _suite_result(checked, limits, shown)
        else:
            results[suite] = _momentum_suite(args, limits)
    passed = all(not r["failures"] for r in results.values())
    rows = []
    for suite, r in results.items():
        for name, value in r["residuals"].items():
            rows.append([suite, name, value, name not in r["failures"]])
    payload = {"command": "verify", "passed": passed, "suites": results}
    return Output(payload=payload, columns=["suite", "identity", "residual", "passed"], rows=rows,
                  code=EXIT_OK if passed else EXIT_THRESHOLD)


def cmd_oracle(args) -> Output:
    if args.ddim:
        p = _ddim_params(args)
        fd = oracle.solve_ddim_pt(p, args.grid, args.levels).energies
        rows = []
        for n in range(args.levels):
            e = ddim.ddim_energy_pt(n, p)
            rows.append([n, e, float(fd[n]), abs(float(fd[n]) - e), _rel(float(fd[n]), e)])
        meta = {"model": "ddim-pt", "grid": args.grid, "D": p.D, "l": p.l, "nu": p.nu, "mu": p.mu,
                "alpha": p.alpha, "max_rel_err": max(r[-1] for r in rows)}
        out = _table("oracle", meta, ["n", "E_closed", "E_fd", "abs_err", "rel_err"], rows)
    else:
        p = params.derive_params(args.beta, args.omega, args.gamma)
        closed = [spectrum.energy_osc(n, p) for n in range(args.levels)]
        if args.convergence:
            grids = sorted(args.grids)
            rows, steps, errs = [], [], []
            for g in grids:
                fd = oracle.solve_spt(p, g, args.levels).energies
                err = max(_rel(float(e), c) for e, c in zip(fd, closed))
                step = math.pi / math.sqrt(p.beta) / g
                rows.append([g, step, err])
                steps.append(step)
                errs.append(err)
            order = oracle.convergence_order(steps, errs)
            meta = {"model": "spt", "beta": p.beta, "omega": p.omega, "levels": args.levels, "order": order}
            out = _table("oracle", meta, ["grid", "step", "max_rel_err"], rows)
        else:
            fd = oracle.solve_spt(p, args.grid, args.levels).energies
            rows = [[n, c, float(e), abs(float(e) - c), _rel(float(e), c)]
                    for n, (c, e) in enumerate(zip(closed, fd))]
            meta = {"model": "spt", "beta": p.beta, "omega": p.omega, "grid": args.grid, "nu": p.nu,
                    "max_rel_err": max(r[-1] for r in rows)}
            out = _table("oracle", meta, ["n", "E_closed", "E_fd", "abs_err", "rel_err"], rows)
    if args.tolerance is not None:
        worst = out.payload["meta"].get("max_rel_err")
        if worst is None:
            worst = max(r[-1] for r in out.rows)
        if not worst < args.tolerance:
            out.code = EXIT_THRESHOLD
    return out


def cmd_tables(args) -> Output:
    from .tables import reference_values

    entries = reference_values(fast=args.fast)
    columns = ["id", "quantity", "value", "reference", "abs_dev", "tolerance", "provenance", "ok"]
    rows = [[e.id, e.quantity, e.value, e.reference, e.abs_dev, e.tolerance, e.provenance, e.ok]
            for e in entries]
    return _table("paper-tables", {"count": len(rows), "failing": [e.id for e in entries if not e.ok]},
                  columns, rows)


# ---------------------------------------------------------------- parser

def _common(parser):
    g = parser.add_argument_group("output")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--output", default=None, help="file path; standard output when omitted")
    g.add_argument("--config", default=None, help="JSON file of option values; flags override it")
    g.add_argument("--precision", type=int, default=12, help="significant digits in CSV output")


def _model_1d(parser, beta=0.2):
    parser.add_argument("--beta", type=float, default=beta)
    parser.add_argument("--omega", type=float, default=1.0)
    parser.add_argument("--gamma", type=float, default=0.0)


def _model_dd(parser, dim_flag="--dim"):
    parser.add_argument(dim_flag, type=int, default=3, help="spatial dimension D")
    parser.add_argument("--l", type=int, default=0)
    parser.add_argument("--mass", type=float, default=1.0)
    parser.add_argument("--beta-prime", type=float, default=0.0)


def build_parser():
    parser = argparse.ArgumentParser(prog="mlqm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("spectrum", help="1D closed-form, recursive and optional FD spectra")
    _common(p)
    _model_1d(p)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--model", choices=("osc", "spt"), default="osc")
    p.add_argument("--oracle", action="store_true", help="add finite-difference energies")
    p.add_argument("--grid", type=int, default=4000)
    p.add_argument("--sweep", type=_float_list, default=None, help="comma-separated beta values")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ddim-spectrum", help="D-dimensional levels by both closed routes")
    _common(p)
    _model_1d(p, beta=0.05)
    _model_dd(p)
    p.add_argument("--n-max", type=int, default=8, help="largest radial quantum number")
    p.set_defaults(func=cmd_ddim_spectrum)

    p = sub.add_parser("wavefn", help="wavefunction samples or Gram matrix")
    _common(p)
    _model_1d(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--model", choices=("spt", "oscillator"), default="spt")
    p.add_argument("--gram", action="store_true")
    p.add_argument("--n-max", type=int, default=12)
    p.set_defaults(func=cmd_wavefn)

    p = sub.add_parser("verify", help="operator-identity residual suites")
    _common(p)
    _model_1d(p)
    p.add_argument("--suite", choices=("algebra", "bose", "ddim", "momentum-grid", "all"), default="algebra")
    p.add_argument("--dim", type=int, default=64, help="matrix truncation size")
    p.add_argument("--interior", type=int, default=40)
    p.add_argument("--perturb-kappa", type=float, default=0.0)
    p.add_argument("--bose-n-max", type=int, default=100)
    p.add_argument("--space-dim", type=int, default=3, help="spatial dimension D for the ddim suite")
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--beta-prime", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=2048, help="momentum grid size")
    p.add_argument("--p-max", type=float, default=10.0)
    p.add_argument("--thresholds", default=None, help="JSON thresholds file replacing the shipped one")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="finite-difference spectra against closed forms")
    _common(p)
    _model_1d(p)
    _model_dd(p)
    p.add_argument("--grid", type=int, default=4000)
    p.add_argument("--levels", type=int, default=11)
    p.add_argument("--convergence", action="store_true")
    p.add_argument("--grids", type=_int_list, default="1000,2000,4000")
    p.add_argument("--ddim", action="store_true", help="use the D-dimensional Poschl-Teller model")
    p.add_argument("--tolerance", type=float, default=None, help="exit 3 if max rel_err is not below this")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("paper-tables", help="recompute every reference value with its provenance")
    _common(p)
    p.add_argument("--fast", action="store_true", help="skip the slower finite-difference entries")
    p.set_defaults(func=cmd_tables)
    return parser, sub.choices


def _read_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return data


def _config_defaults(data, command, subparser, commands):
    """Flatten global keys and the section for ``command``; reject anything unknown."""
    known = {a.dest for a in subparser._actions if a.dest not in ("help", "func", "config")}
    merged = {}
    for key, value in data.items():
        if key in commands:
            if not isinstance(value, dict):
                raise UsageError(f"config section {key!r} must be an object")
            if key == command:
                merged.update({k.replace("-", "_"): v for k, v in value.items()})
            continue
        if key not in GLOBAL_KEYS:
            raise UsageError(f"unknown top-level config key {key!r}; command flags go in a section")
        merged[key] = value
    unknown = sorted(set(merged) - known)
    if unknown:
        raise UsageError(f"unknown config keys for {command}: {', '.join(unknown)}")
    for action in subparser._actions:
        if action.dest in merged and action.choices is not None and merged[action.dest] not in action.choices:
            raise UsageError(f"config value {merged[action.dest]!r} not allowed for {action.dest}")
    return merged


def _parse(argv):
    parser, commands = build_parser()
    args = parser.parse_args(argv)
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        sub = commands[args.command]
        sub.set_defaults(**_config_defaults(_read_config(path), args.command, sub, commands))
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _parse(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"mlqm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out = args.func(args)
    except (DomainError, ConfigurationError) as exc:
        print(f"mlqm: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ComputationError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"mlqm: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    text = to_json(out.payload) if args.format == "json" else to_csv(out.columns, out.rows, args.precision)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if out.code == EXIT_THRESHOLD:
        print("mlqm: verification threshold exceeded", file=sys.stderr)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
