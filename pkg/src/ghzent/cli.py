"""Command-line surface: eval, contour, decompose, compare.

Exit codes are part of the contract: 0 ok, 2 usage, 3 domain (fidelity route
on a separable point), 4 I/O, 5 verification (decomposition residual),
6 comparison tolerance violation.  All numeric output goes through one
12-significant-digit scientific formatter so files regenerate byte for byte;
JSON files carry numbers as decimal strings for the same reason.
"""

import argparse
import json
import sys

import numpy as np

from .decomposition import (
    average_entanglement,
    build_optimal_decomposition,
    decomposition_high_fidelity,
    verify_decomposition,
)
from .family import GhzParams, build_state, check_class, k_sep_deltoid_contains
from .measures import (
    SeparablePointError,
    bures_from_geometric,
    eval_measure,
    groverian_from_geometric,
    measure_via_fidelity,
    measure_via_legendre_2d,
)
from .oracle import OracleConfig, convex_roof_upper_bound

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4
EXIT_VERIFY = 5
EXIT_COMPARE = 6

METHODS = ("auto", "mu-search", "bisep", "fidelity", "legendre2d", "oracle")

LEGENDRE_TOL = 1e-6
FIDELITY_TOL = 1e-8
SANDWICH_TOL = 1e-9
MONOTONE_TOL = 1e-9


def fmt(x):
    """12-significant-digit scientific notation."""
    return f"{float(x):.11e}"


def _params(args):
    return GhzParams(args.n_qubits, args.f_plus, args.f_minus)


def _eval_by_method(params, k, method, seed):
    if method in ("auto", "mu-search", "bisep"):
        if method == "mu-search" and k < 3:
            raise ValueError("mu-search applies to k >= 3")
        if method == "bisep" and k != 2:
            raise ValueError("bisep applies to k = 2")
        res = eval_measure(params, k)
        return res.value, res.mu, res.nu, res.method
    if method == "fidelity":
        if k != 3:
            raise ValueError("the fidelity route applies to k = 3")
        return measure_via_fidelity(params), None, None, "fidelity-search"
    if method == "legendre2d":
        return measure_via_legendre_2d(params, k), None, None, "legendre-grid"
    if method == "oracle":
        if params.n_qubits > 6:
            raise ValueError("the oracle scales to at most 6 qubits")
        rho = build_state(params)
        size = min(2**params.n_qubits + 4, 64)
        cfg = OracleConfig(restarts=10, seed=seed)
        return convex_roof_upper_bound(rho, k, size, cfg), None, None, "oracle"
    raise ValueError(f"unknown method {method}")


def cmd_eval(args):
    params = _params(args)
    k = check_class(args.k, params.n_qubits)
    value, mu, nu, method = _eval_by_method(params, k, args.method, args.seed)
    print(f"value = {fmt(value)}")
    if mu is not None:
        print(f"mu = {fmt(mu)}")
    if nu is not None:
        print(f"nu = {fmt(nu)}")
    print(f"method = {method}")
    print(f"bures = {fmt(bures_from_geometric(value))}")
    print(f"groverian = {fmt(groverian_from_geometric(value))}")
    return EXIT_OK


def _triangle_grid(resolution):
    axis = np.linspace(0.0, 1.0, resolution)
    for fp in axis:
        for fm in axis:
            if fp + fm <= 1.0 + 1e-12:
                yield float(fp), float(fm)


def cmd_contour(args):
    if args.resolution < 2:
        raise ValueError("resolution must be at least 2")
    classes = sorted({check_class(k, args.n_qubits) for k in args.k})
    rows = []
    for fp, fm in _triangle_grid(args.resolution):
        params = GhzParams(args.n_qubits, fp, fm)
        for k in classes:
            rows.append((fp, fm, k, eval_measure(params, k).value))
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            if args.format == "csv":
                fh.write("f_plus,f_minus,k,value\n")
                for fp, fm, k, v in rows:
                    fh.write(f"{fmt(fp)},{fmt(fm)},{k},{fmt(v)}\n")
            else:
                records = [
                    {"f_plus": fmt(fp), "f_minus": fmt(fm), "k": k, "value": fmt(v)}
                    for fp, fm, k, v in rows
                ]
                json.dump(records, fh, indent=1)
                fh.write("\n")
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(rows)} rows to {args.output}")
    return EXIT_OK


def cmd_decompose(args):
    fp = args.f_plus
    if not 0.25 <= fp <= 1.0:
        raise ValueError(f"no roof decomposition is defined for f+ = {fp}")
    dec = build_optimal_decomposition(fp) if fp <= 0.75 else decomposition_high_fidelity(fp)
    target = build_state(GhzParams(3, fp, 0.0))
    residual = verify_decomposition(dec, target)
    if residual > 1e-10:
        print(f"error: reconstruction residual {residual:.3e} above 1e-10", file=sys.stderr)
        return EXIT_VERIFY
    cfg = OracleConfig(restarts=20, seed=args.seed)
    avg = average_entanglement(dec, k=3, cfg=cfg)
    payload = {
        "f_plus": fmt(fp),
        "n_qubits": 3,
        "k": 3,
        "residual": fmt(residual),
        "average_entanglement": fmt(avg),
        "elements": [
            {
                "weight": fmt(w),
                "amplitudes": [[fmt(a.real), fmt(a.imag)] for a in psi],
            }
            for w, psi in dec
        ],
    }
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(dec)} elements to {args.output} (residual {residual:.3e})")
    return EXIT_OK


def cmd_compare(args):
    if args.samples < 1:
        raise ValueError("need at least one sample")
    classes = sorted({check_class(k, args.n_qubits) for k in args.k})
    rng = np.random.default_rng(args.seed)
    points = []
    for _ in range(args.samples):
        fp = rng.uniform(0.0, 1.0)
        fm = rng.uniform(0.0, 1.0 - fp)
        points.append(GhzParams(args.n_qubits, fp, fm))

    failures = []
    max_legendre = 0.0
    max_fidelity = 0.0
    fidelity_points = 0
    for params in points:
        values = {k: eval_measure(params, k).value for k in classes}
        for k_lo, k_hi in zip(classes, classes[1:]):
            if values[k_lo] > values[k_hi] + MONOTONE_TOL:
                failures.append(f"monotonicity violated at {params} ({k_lo} vs {k_hi})")
        for k in classes:
            if k < 3:
                continue
            dev = abs(values[k] - measure_via_legendre_2d(params, k))
            max_legendre = max(max_legendre, dev)
        if args.n_qubits == 3 and 3 in classes and not k_sep_deltoid_contains(params, 3):
            fp, fm = params.f_plus, params.f_minus
            if fp > fm:
                dev = abs(values[3] - measure_via_fidelity(params))
                max_fidelity = max(max_fidelity, dev)
                fidelity_points += 1
    if max_legendre > LEGENDRE_TOL:
        failures.append(f"legendre-grid deviation {max_legendre:.3e} above {LEGENDRE_TOL}")
    if max_fidelity > FIDELITY_TOL:
        failures.append(f"fidelity-search deviation {max_fidelity:.3e} above {FIDELITY_TOL}")

    sandwich_checked = 0
    sandwich_bad = 0
    if args.n_qubits <= 4:
        cfg = OracleConfig(restarts=3, seed=args.seed)
        size = min(2**args.n_qubits + 2, 64)
        for params in points[: min(args.samples, args.oracle_samples)]:
            rho = build_state(params)
            for k in classes:
                bound = convex_roof_upper_bound(rho, k, size, cfg)
                sandwich_checked += 1
                if bound < eval_measure(params, k).value - SANDWICH_TOL:
                    sandwich_bad += 1
        if sandwich_bad:
            failures.append(f"{sandwich_bad} oracle sandwich violations")

    print(f"samples = {args.samples}  n = {args.n_qubits}  classes = {classes}  seed = {args.seed}")
    print(f"max |mu-search - legendre-grid| = {max_legendre:.3e}  (tol {LEGENDRE_TOL})")
    if fidelity_points:
        print(
            f"max |mu-search - fidelity-search| = {max_fidelity:.3e}"
            f"  (tol {FIDELITY_TOL}, {fidelity_points} entangled points)"
        )
    print(f"oracle sandwich violations = {sandwich_bad} / {sandwich_checked}  (tol {SANDWICH_TOL})")
    if failures:
        for f in failures:
            print(f"FAIL: {f}", file=sys.stderr)
        return EXIT_COMPARE
    print("PASS")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ghzent",
        description="Geometric measure of entanglement for GHZ-symmetric qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate the measure at one triangle point")
    p_eval.add_argument("-n", "--n-qubits", type=int, required=True)
    p_eval.add_argument("--fp", dest="f_plus", type=float, required=True)
    p_eval.add_argument("--fm", dest="f_minus", type=float, required=True)
    p_eval.add_argument("-k", type=int, required=True, help="separability class")
    p_eval.add_argument("--method", choices=METHODS, default="auto")
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.set_defaults(func=cmd_eval)

    p_cont = sub.add_parser("contour", help="measure values on a triangle grid")
    p_cont.add_argument("-n", "--n-qubits", type=int, required=True)
    p_cont.add_argument("-k", type=int, nargs="+", required=True)
    p_cont.add_argument("--resolution", type=int, default=50)
    p_cont.add_argument("-o", "--output", required=True)
    p_cont.add_argument("--format", choices=("csv", "json"), default="csv")
    p_cont.set_defaults(func=cmd_contour)

    p_dec = sub.add_parser("decompose", help="optimal roof decomposition on the f-=0 edge")
    p_dec.add_argument("--fp", dest="f_plus", type=float, required=True)
    p_dec.add_argument("-o", "--output", required=True)
    p_dec.add_argument("--seed", type=int, default=0)
    p_dec.set_defaults(func=cmd_decompose)

    p_cmp = sub.add_parser("compare", help="cross-check the methods on random points")
    p_cmp.add_argument("-n", "--n-qubits", type=int, required=True)
    p_cmp.add_argument("-k", type=int, nargs="+", required=True)
    p_cmp.add_argument("--samples", type=int, default=100)
    p_cmp.add_argument("--seed", type=int, default=0)
    p_cmp.add_argument(
        "--oracle-samples",
        type=int,
        default=10,
        help="points for the convex-roof sandwich check (n <= 4 only)",
    )
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SeparablePointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
