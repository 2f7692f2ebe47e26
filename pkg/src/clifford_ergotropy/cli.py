"""Command-line front end.

Exit codes: 0 success, 2 input or validation error, 3 internal failure.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import experiments as ex
from .bounds import min_relative_entropy_1q, stabilizer_fidelity_1q
from .models import (
    clifford_ergotropy_1q,
    ergotropy_1q,
    t_product_bound,
    tfim_bound_crossings,
    tfim_t_product_bound_asymptotic,
)
from .textio import ParseError, read_hamiltonian, read_state


class UsageError(Exception):
    pass


def _print_kv(pairs) -> None:
    for k, v in pairs.items():
        if isinstance(v, bool):
            v = int(v)
        elif isinstance(v, (float, np.floating)):
            v = f"{float(v):.15g}"
        print(f"{k}={v}")


def _write_rows(rows, path) -> None:
    try:
        ex.write_csv(rows, path)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_sweep2q(args) -> None:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    rows = ex.sweep_2q(args.h, args.g_min, args.g_max, args.steps)
    _write_rows(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")


def cmd_typicality(args) -> None:
    if not 2 <= args.n <= 10:
        raise UsageError("--n must lie in 2..10")
    if args.a <= 1:
        raise UsageError("--a must exceed 1")
    ham = ex.model_hamiltonian(args.model, args.n, args.field)
    rows = ex.typicality_rows(args.n, args.samples, args.seed, args.a, ham)
    _write_rows(rows, args.out)
    summary = ex.typicality_summary(rows)
    summary["threshold"] = ex.typicality_threshold(args.n, args.a)
    _print_kv(summary)


def cmd_bounds(args) -> None:
    try:
        state = read_state(args.state)
        ham = read_hamiltonian(args.hamiltonian)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}") from None
    except OSError as exc:
        raise UsageError(str(exc)) from None
    if state.n_qubits != ham.n_qubits:
        raise UsageError(f"state has {state.n_qubits} qubits, Hamiltonian {ham.n_qubits}")
    if state.n_qubits > 10:
        raise UsageError("N > 10 is outside the exhaustive spectrum range")
    report = ex.bounds_summary(state, ham, args.exact_n_limit,
                               (args.heuristic_restarts, args.heuristic_steps),
                               seed=args.seed, maximize=args.maximize)
    _print_kv(report)


def cmd_ising_bound(args) -> None:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    rep = t_product_bound(args.model, args.n, args.field)
    out = {
        "model": args.model,
        "n": args.n,
        "field": args.field,
        "ground_energy": rep.ground_energy,
        "ground_energy_asymptotic": rep.ground_energy_asymptotic,
        "l1_norm": rep.l1_norm,
        "max_r1_site": rep.max_r1_site,
        "gap_lower_bound_holder": rep.gap_lower_bound_holder,
        "gap_lower_bound": rep.gap_lower_bound,
    }
    if args.model == "tfim":
        lo, hi = tfim_bound_crossings()
        out["asymptotic_bound_per_site"] = tfim_t_product_bound_asymptotic(args.field)
        out["crossing_lower"] = lo
        out["crossing_upper"] = hi
    _print_kv(out)


def cmd_single_qubit(args) -> None:
    b = np.array(args.bloch, dtype=float)
    if np.linalg.norm(b) > 1 + 1e-10:
        raise UsageError("Bloch vector longer than 1")
    e = ergotropy_1q(b, args.field)
    ecl = clifford_ergotropy_1q(b, args.field)
    _print_kv({
        "ergotropy": e,
        "clifford_ergotropy": ecl,
        "gap": e - ecl,
        "stabilizer_fidelity": stabilizer_fidelity_1q(b),
        "min_relative_entropy": min_relative_entropy_1q(b),
    })


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clifford-ergotropy",
                                description="Clifford ergotropy, bounds and experiments")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep2q", help="two-qubit |TT> sweep over the transverse field")
    s.add_argument("--h", type=float, default=0.0, help="longitudinal field")
    s.add_argument("--g-min", type=float, default=-2.0)
    s.add_argument("--g-max", type=float, default=2.0)
    s.add_argument("--steps", type=int, default=81)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sweep2q)

    s = sub.add_parser("typicality", help="Haar-state r1 / M_inf statistics")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--a", type=float, default=2.0)
    s.add_argument("--model", choices=["tfim", "classical"], default="tfim",
                   help="Hamiltonian used for the initial-energy column")
    s.add_argument("--field", type=float, default=1.0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_typicality)

    s = sub.add_parser("bounds", help="bound report for a state file and a Hamiltonian file")
    s.add_argument("state")
    s.add_argument("hamiltonian")
    s.add_argument("--exact-n-limit", type=int, default=2)
    s.add_argument("--heuristic-restarts", type=int, default=50)
    s.add_argument("--heuristic-steps", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--maximize", action="store_true",
                   help="maximize the energy instead (charging)")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("ising-bound", help="product |T...T> gap bounds for Ising chains")
    s.add_argument("--model", choices=["tfim", "classical"], required=True)
    s.add_argument("--field", type=float, default=0.0, help="g (tfim) or h (classical)")
    s.add_argument("--n", type=int, default=4)
    s.set_defaults(func=cmd_ising_bound)

    s = sub.add_parser("single-qubit", help="closed forms for H = h Z")
    s.add_argument("--bloch", type=float, nargs=3, required=True, metavar=("RX", "RY", "RZ"))
    s.add_argument("--field", type=float, default=1.0)
    s.set_defaults(func=cmd_single_qubit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
