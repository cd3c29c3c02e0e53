import numpy as np
import pytest

from ghzent.family import GhzParams, build_state, extract_fidelities
from ghzent.measures import eval_measure
from ghzent.oracle import (
    OracleConfig,
    OracleConvergenceError,
    bisep_measure_from_transform,
    closest_grouped_product_state,
    convex_roof_upper_bound,
    pure_state_measure,
    set_partitions,
)
from ghzent.states import (
    Decomposition,
    ghz_plus,
    haar_random_state,
    random_density_matrix,
    tensor_product,
)

FAST = OracleConfig(restarts=10)


def stirling2(n, k):
    if k == 0:
        return 1 if n == 0 else 0
    if n == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def test_partitions_three_into_two():
    parts = set_partitions(3, 2)
    assert len(parts) == 3
    as_sets = {frozenset(frozenset(b) for b in p) for p in parts}
    assert frozenset({frozenset({1}), frozenset({2, 3})}) in as_sets
    assert frozenset({frozenset({2}), frozenset({1, 3})}) in as_sets
    assert frozenset({frozenset({3}), frozenset({1, 2})}) in as_sets


def test_partitions_trivial_and_seven():
    assert len(set_partitions(3, 3)) == 1
    assert len(set_partitions(4, 2)) == 7


def test_partition_counts_match_stirling_numbers():
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert len(set_partitions(n, k)) == stirling2(n, k)


def test_partitions_reject_bad_arguments():
    with pytest.raises(ValueError):
        set_partitions(9, 2)
    with pytest.raises(ValueError):
        set_partitions(3, 4)
    with pytest.raises(ValueError):
        set_partitions(3, 0)


def test_seesaw_product_state_is_fixed_point():
    psi = tensor_product([np.array([1, 0], dtype=complex)] * 3)
    overlap_sq, state = closest_grouped_product_state(psi, ((1,), (2,), (3,)), FAST)
    assert abs(overlap_sq - 1.0) < 1e-12
    assert abs(abs(np.vdot(state, psi)) - 1.0) < 1e-9


def test_seesaw_ghz_full_separability():
    overlap_sq, state = closest_grouped_product_state(ghz_plus(3), ((1,), (2,), (3,)), FAST)
    assert abs(overlap_sq - 0.5) < 1e-9
    assert abs(abs(np.vdot(state, ghz_plus(3))) ** 2 - overlap_sq) < 1e-9


def test_seesaw_ghz_bipartition():
    overlap_sq, _ = closest_grouped_product_state(ghz_plus(3), ((1,), (2, 3)), FAST)
    assert abs(overlap_sq - 0.5) < 1e-9


def test_seesaw_history_is_monotone():
    _, _, histories = closest_grouped_product_state(
        ghz_plus(3), ((1,), (2,), (3,)), OracleConfig(restarts=25), return_history=True
    )
    assert len(histories) == 25
    for hist in histories:
        for a, b in zip(hist, hist[1:]):
            assert b >= a - 1e-12


def test_seesaw_rejects_bad_partitions():
    with pytest.raises(ValueError):
        closest_grouped_product_state(ghz_plus(3), ((1,), (2,)), FAST)
    with pytest.raises(ValueError):
        closest_grouped_product_state(ghz_plus(3), ((1, 2), (2, 3)), FAST)


def test_seesaw_reports_nonconvergence():
    cfg = OracleConfig(restarts=1, max_iterations=1, tolerance=1e-30)
    with pytest.raises(OracleConvergenceError):
        closest_grouped_product_state(ghz_plus(3), ((1,), (2,), (3,)), cfg)


def test_pure_state_measure_product_state():
    psi = tensor_product([np.array([1, 0], dtype=complex)] * 3)
    assert pure_state_measure(psi, 3, FAST) < 1e-12


def test_pure_state_measure_ghz_biseparable():
    assert abs(pure_state_measure(ghz_plus(3), 2, FAST) - 0.5) < 1e-9


def test_pure_state_measure_scales_cap():
    with pytest.raises(ValueError):
        pure_state_measure(haar_random_state(2**7, np.random.default_rng(0)), 2, FAST)


def test_pure_state_measure_local_unitary_invariance():
    rng = np.random.default_rng(17)
    psi = ghz_plus(3)
    base = pure_state_measure(psi, 3, FAST)
    for _ in range(5):
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(g)
        u = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
        rotated = np.kron(u, np.eye(4)) @ psi
        assert abs(pure_state_measure(rotated, 3, FAST) - base) < 1e-8


def test_roof_bound_pure_ghz():
    gp = ghz_plus(3)
    rho = np.outer(gp, gp.conj())
    val = convex_roof_upper_bound(rho, 3, ensemble_size=4, cfg=OracleConfig(restarts=5))
    assert abs(val - 0.5) < 1e-6


def test_roof_bound_separable_state():
    rho = build_state(GhzParams(3, 1 / 8, 1 / 8))
    val = convex_roof_upper_bound(rho, 3, ensemble_size=32, cfg=OracleConfig(restarts=200))
    assert val <= 1e-3


def test_roof_bound_with_warm_start():
    from ghzent.decomposition import build_optimal_decomposition

    rho = build_state(GhzParams(3, 0.5, 0.0))
    dec = build_optimal_decomposition(0.5)
    val = convex_roof_upper_bound(
        rho,
        3,
        ensemble_size=8,
        cfg=OracleConfig(restarts=5),
        warm_starts=[dec],
        state_cfg=OracleConfig(restarts=15),
    )
    expected = (2 - np.sqrt(3)) / 4
    assert val >= expected - 1e-9
    assert val < expected + 1e-5


def test_roof_bound_rejects_mismatched_warm_start():
    rho = build_state(GhzParams(3, 0.5, 0.0))
    wrong = Decomposition(np.array([1.0]), ghz_plus(3)[None, :])
    with pytest.raises(ValueError):
        convex_roof_upper_bound(rho, 3, 8, OracleConfig(restarts=2), warm_starts=[wrong])


def test_roof_bound_ensemble_size_validation():
    rho = build_state(GhzParams(3, 0.5, 0.0))
    with pytest.raises(ValueError):
        convex_roof_upper_bound(rho, 3, 4, FAST)  # rank 8 > ensemble 4
    with pytest.raises(ValueError):
        convex_roof_upper_bound(rho, 3, 65, FAST)


def test_roof_bound_sandwiches_formula():
    rng = np.random.default_rng(23)
    cfg = OracleConfig(restarts=3, seed=1)
    for _ in range(8):
        fp = rng.uniform(0.0, 1.0)
        fm = rng.uniform(0.0, 1.0 - fp)
        params = GhzParams(3, fp, fm)
        rho = build_state(params)
        bound = convex_roof_upper_bound(rho, 3, 10, cfg)
        assert bound >= eval_measure(params, 3).value - 1e-9


def test_roof_bound_lower_bounds_arbitrary_states():
    rng = np.random.default_rng(29)
    cfg = OracleConfig(restarts=3, seed=2)
    for _ in range(5):
        rho = random_density_matrix(8, rng)
        fp, fm = extract_fidelities(rho)
        formula = eval_measure(GhzParams(3, fp, fm), 3).value
        assert convex_roof_upper_bound(rho, 3, 10, cfg) >= formula - 1e-6


def test_bisep_transform_examples():
    assert abs(bisep_measure_from_transform(0.5)) < 1e-10
    assert abs(bisep_measure_from_transform(1.0) - 0.5) < 1e-8
    assert abs(bisep_measure_from_transform(0.75) - (0.5 - np.sqrt(3) / 4)) < 1e-8


def test_bisep_transform_matches_closed_form_on_grid():
    for f in np.linspace(0.5, 1.0, 50):
        expected = 0.5 - np.sqrt(f * (1.0 - f))
        assert abs(bisep_measure_from_transform(f) - expected) < 1e-8


def test_bisep_transform_domain():
    with pytest.raises(ValueError):
        bisep_measure_from_transform(0.3)
    with pytest.raises(ValueError):
        bisep_measure_from_transform(1.1)
