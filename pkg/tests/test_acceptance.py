"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.  Tolerances are fixed here and nowhere else.
"""

import time

import numpy as np

from ghzent.cli import main as cli_main
from ghzent.decomposition import (
    average_entanglement,
    build_optimal_decomposition,
    decomposition_high_fidelity,
    verify_decomposition,
)
from ghzent.family import GhzParams, build_state, extract_fidelities, k_sep_deltoid_contains
from ghzent.measures import (
    closed_form_hypotenuse,
    closed_form_lower_cathetus,
    eval_measure,
    measure_via_fidelity,
    measure_via_legendre_2d,
)
from ghzent.oracle import (
    OracleConfig,
    bisep_measure_from_transform,
    closest_grouped_product_state,
    convex_roof_upper_bound,
)
from ghzent.states import ghz_plus, random_density_matrix


def report(num, label, ok, detail):
    print(f"[criterion {num:2d}] {'PASS' if ok else 'FAIL'}  {label}: {detail}")
    assert ok, f"criterion {num} ({label}): {detail}"


def region_distance(fp, fm, k):
    """Euclidean distance from a triangle point to the k-separable region."""
    a = 0.5 if k == 2 else 2.0 ** (1 - k)
    if k == 2:
        vertices = [(0.0, 0.0), (0.5, 0.0), (0.5, 0.5), (0.0, 0.5)]
    else:
        vertices = [(0.0, 0.0), (a, 0.0), (0.5, 0.5), (0.0, a)]
    p = np.array([fp, fm])
    best = np.inf
    for i in range(4):
        va = np.array(vertices[i])
        vb = np.array(vertices[(i + 1) % 4])
        t = np.clip(np.dot(p - va, vb - va) / np.dot(vb - va, vb - va), 0.0, 1.0)
        best = min(best, float(np.linalg.norm(p - (va + t * (vb - va)))))
    return best


def random_triangle(rng, n):
    fp = rng.uniform(0.0, 1.0)
    fm = rng.uniform(0.0, 1.0 - fp)
    return GhzParams(n, fp, fm)


def test_criterion_01_ghz_corner():
    t0 = time.perf_counter()
    value = eval_measure(GhzParams(3, 1.0, 0.0), 3).value
    elapsed = time.perf_counter() - t0
    err = abs(value - 0.5)
    report(1, "GHZ corner", err < 1e-9 and elapsed < 1.0,
           f"value={value:.12f} |err|={err:.2e} time={elapsed:.3f}s (tol 1e-9, <1s)")


def test_criterion_02_hypotenuse():
    worst = 0.0
    for fp in np.linspace(0.5, 1.0, 50):
        got = eval_measure(GhzParams(3, fp, 1.0 - fp), 3).value
        worst = max(worst, abs(got - closed_form_hypotenuse(fp)))
    report(2, "hypotenuse closed form", worst < 1e-8,
           f"max dev {worst:.2e} on 50 points (tol 1e-8)")


def test_criterion_03_lower_cathetus():
    worst = 0.0
    for fp in np.linspace(0.25, 1.0, 50):
        got = eval_measure(GhzParams(3, fp, 0.0), 3).value
        worst = max(worst, abs(got - closed_form_lower_cathetus(fp)))
    seam = abs(eval_measure(GhzParams(3, 0.75, 0.0), 3).value - 0.25)
    report(3, "lower cathetus closed form", worst < 1e-8 and seam < 1e-8,
           f"max dev {worst:.2e}, seam dev {seam:.2e} (tol 1e-8)")


def test_criterion_04_cross_method_agreement():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    worst_fid = worst_leg = 0.0
    count = 0
    while count < 100:
        params = random_triangle(rng, 3)
        if k_sep_deltoid_contains(params, 3) or not params.f_plus > params.f_minus:
            continue
        count += 1
        base = eval_measure(params, 3).value
        worst_fid = max(worst_fid, abs(base - measure_via_fidelity(params)))
        worst_leg = max(worst_leg, abs(base - measure_via_legendre_2d(params, 3)))
    elapsed = time.perf_counter() - t0
    report(4, "cross-method agreement",
           worst_fid < 1e-8 and worst_leg < 1e-6 and elapsed < 30.0,
           f"fidelity dev {worst_fid:.2e} (tol 1e-8), transform dev {worst_leg:.2e}"
           f" (tol 1e-6), time={elapsed:.1f}s (<30s)")


def test_criterion_05_zero_sets():
    rng = np.random.default_rng(5)
    ok = True
    details = []
    for k in (2, 3, 4):
        inside_max = 0.0
        inside = 0
        while inside < 200:
            params = random_triangle(rng, 4)
            if not k_sep_deltoid_contains(params, k):
                continue
            inside += 1
            inside_max = max(inside_max, eval_measure(params, k).value)
        outside_min = np.inf
        outside = 0
        while outside < 200:
            params = random_triangle(rng, 4)
            if k_sep_deltoid_contains(params, k):
                continue
            if region_distance(params.f_plus, params.f_minus, k) < 0.02:
                continue
            outside += 1
            outside_min = min(outside_min, eval_measure(params, k).value)
        ok = ok and inside_max < 1e-9 and outside_min > 1e-4
        details.append(f"k={k}: in<={inside_max:.1e} out>={outside_min:.1e}")
    report(5, "zero sets", ok, "; ".join(details) + " (tol 1e-9 / >1e-4)")


def test_criterion_06_class_monotonicity():
    worst = 0.0
    axis = np.linspace(0.0, 1.0, 50)
    for fp in axis:
        for fm in axis:
            if fp + fm > 1.0 + 1e-12:
                continue
            params = GhzParams(4, fp, fm)
            e2 = eval_measure(params, 2).value
            e3 = eval_measure(params, 3).value
            e4 = eval_measure(params, 4).value
            worst = max(worst, e2 - e3, e3 - e4)
    report(6, "class monotonicity", worst < 1e-9,
           f"max E^(k) - E^(k+1) = {worst:.2e} on 50x50 grid (tol 1e-9)")


def test_criterion_07_optimal_decomposition():
    t0 = time.perf_counter()
    cfg = OracleConfig(restarts=20, seed=7)
    ok = True
    details = []
    for fp in (0.3, 0.5, 0.7):
        dec = build_optimal_decomposition(fp)
        residual = verify_decomposition(dec, build_state(GhzParams(3, fp, 0.0)))
        dev = abs(average_entanglement(dec, 3, cfg) - closed_form_lower_cathetus(fp))
        ok = ok and residual < 1e-10 and dev < 1e-6
        details.append(f"f+={fp}: res={residual:.1e} dev={dev:.1e}")
    for fp in (0.8, 0.9, 1.0):
        dec = decomposition_high_fidelity(fp)
        residual = verify_decomposition(dec, build_state(GhzParams(3, fp, 0.0)))
        dev = abs(average_entanglement(dec, 3, cfg) - (fp - 0.5))
        ok = ok and residual < 1e-10 and dev < 1e-6
        details.append(f"f+={fp}: res={residual:.1e} dev={dev:.1e}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    report(7, "roof decomposition", ok,
           "; ".join(details) + f"; time={elapsed:.1f}s (<60s)")


def test_criterion_08_pure_state_oracle():
    cfg = OracleConfig(restarts=50, seed=8)
    overlap_sq, _, histories = closest_grouped_product_state(
        ghz_plus(3), ((1,), (2,), (3,)), cfg, return_history=True
    )
    value = 1.0 - overlap_sq
    monotone = all(
        b >= a - 1e-12 for h in histories for a, b in zip(h, h[1:])
    )
    report(8, "pure-state see-saw", abs(value - 0.5) < 1e-6 and monotone,
           f"measure={value:.9f} (tol 1e-6), monotone={monotone}, 50 restarts")


def test_criterion_09_bisep_form_derivation():
    worst = 0.0
    for f in np.linspace(0.5, 1.0, 50):
        expected = 0.5 - np.sqrt(f * (1.0 - f))
        worst = max(worst, abs(bisep_measure_from_transform(f) - expected))
    report(9, "biseparable closed-form derivation", worst < 1e-8,
           f"max dev {worst:.2e} on 50 points (tol 1e-8)")


def test_criterion_10_convexity_and_swap():
    rng = np.random.default_rng(10)
    ok = True
    details = []
    for k in (2, 3, 4):
        worst_cvx = worst_swap = 0.0
        for _ in range(500):
            p = random_triangle(rng, 4)
            q = random_triangle(rng, 4)
            mid = GhzParams(4, (p.f_plus + q.f_plus) / 2, (p.f_minus + q.f_minus) / 2)
            gap = eval_measure(mid, k).value - 0.5 * (
                eval_measure(p, k).value + eval_measure(q, k).value
            )
            worst_cvx = max(worst_cvx, gap)
            swapped = GhzParams(4, p.f_minus, p.f_plus)
            worst_swap = max(
                worst_swap,
                abs(eval_measure(p, k).value - eval_measure(swapped, k).value),
            )
        ok = ok and worst_cvx < 1e-9 and worst_swap < 1e-9
        details.append(f"k={k}: cvx={worst_cvx:.1e} swap={worst_swap:.1e}")
    report(10, "convexity and swap symmetry", ok,
           "; ".join(details) + " (tol 1e-9, 500 tests per class)")


def test_criterion_11_lower_bound_for_arbitrary_states():
    rng = np.random.default_rng(11)
    cfg = OracleConfig(restarts=3, seed=11)
    worst = np.inf
    for _ in range(50):
        rho = random_density_matrix(8, rng)
        fp, fm = extract_fidelities(rho)
        formula = eval_measure(GhzParams(3, fp, fm), 3).value
        bound = convex_roof_upper_bound(rho, 3, ensemble_size=10, cfg=cfg)
        worst = min(worst, bound - formula)
    report(11, "formula lower-bounds arbitrary states", worst > -1e-6,
           f"min(bound - formula) = {worst:.2e} over 50 states (tol -1e-6)")


def test_criterion_12_cli_determinism(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        code = cli_main(
            ["contour", "-n", "4", "-k", "2", "3", "4", "--resolution", "15",
             "-o", str(path)]
        )
        assert code == 0
    identical = paths[0].read_bytes() == paths[1].read_bytes()
    report(12, "contour byte determinism", identical,
           f"two runs identical = {identical}")
