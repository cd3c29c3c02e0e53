"""Brute-force verifiers, independent of the analytic formulas.

The pure-state geometric measure is computed as one minus the best squared
overlap with grouped product states, maximized by alternating ("see-saw")
optimization over the tensor factors of every partition of the qubits into k
groups.  Each factor update is an exact partial maximization, so the overlap
sequence is non-decreasing; random restarts guard against local maxima.
Mixed-state values are upper-bounded by searching over ensemble
decompositions generated from the eigenbasis through random isometries.
"""

import string
from dataclasses import dataclass, replace

import numpy as np

from .optimize import golden_section_max
from .states import Decomposition, check_density_matrix, check_pure_state, n_qubits_of

__all__ = [
    "OracleConfig",
    "OracleConvergenceError",
    "set_partitions",
    "closest_grouped_product_state",
    "pure_state_measure",
    "convex_roof_upper_bound",
    "bisep_measure_from_transform",
]

_LETTERS = string.ascii_lowercase


class OracleConvergenceError(RuntimeError):
    """See-saw failed to converge within the iteration budget."""


@dataclass(frozen=True)
class OracleConfig:
    restarts: int = 50
    max_iterations: int = 500
    tolerance: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("need at least one iteration")


def set_partitions(n, k):
    """All partitions of {1..n} into exactly k nonempty unlabeled groups.

    Blocks are ordered by their smallest element, elements ascending; the
    count is the Stirling number of the second kind S(n, k).
    """
    if int(n) != n or int(k) != k or not 1 <= k <= n <= 8:
        raise ValueError(f"need integers 1 <= k <= n <= 8, got n={n}, k={k}")
    out = []
    blocks = []

    def assign(i):
        if i > n:
            if len(blocks) == k:
                out.append(tuple(tuple(b) for b in blocks))
            return
        if len(blocks) + (n - i + 1) < k:
            return
        for b in blocks:
            b.append(i)
            assign(i + 1)
            b.pop()
        if len(blocks) < k:
            blocks.append([i])
            assign(i + 1)
            blocks.pop()

    assign(1)
    return out


def _check_partition(partition, n):
    seen = set()
    for block in partition:
        if len(block) == 0:
            raise ValueError("partition blocks must be nonempty")
        for q in block:
            if not 1 <= q <= n:
                raise ValueError(f"qubit index {q} outside 1..{n}")
            if q in seen:
                raise ValueError(f"qubit index {q} appears twice")
            seen.add(q)
    if len(seen) != n:
        raise ValueError("partition must cover all qubits")


def _haar_factor(size, rng):
    v = rng.normal(size=size) + 1j * rng.normal(size=size)
    return v / np.linalg.norm(v)


def _assemble_product(factors, groups, n):
    """Full product vector from per-group factor tensors."""
    subs = ",".join("".join(_LETTERS[a] for a in g) for g in groups)
    out = _LETTERS[:n]
    return np.einsum(f"{subs}->{out}", *factors).reshape(-1)


def closest_grouped_product_state(psi, partition, cfg=None, return_history=False):
    """Best squared overlap of `psi` with states that are product across `partition`.

    See-saw: with all factors but one fixed, the optimal remaining factor is
    the normalized contraction of psi against the others, so each sweep can
    only increase the overlap.  Converged when the gain per sweep drops below
    cfg.tolerance; the best result over cfg.restarts random initializations
    is returned as (overlap_sq, product_state).  With return_history=True a
    list of per-sweep overlap records (one per restart) is appended to the
    return tuple.

    Raises OracleConvergenceError, reporting the best value so far, when a
    restart exhausts cfg.max_iterations sweeps.
    """
    cfg = cfg or OracleConfig()
    psi = check_pure_state(psi)
    n = n_qubits_of(len(psi))
    _check_partition(partition, n)
    groups = [tuple(q - 1 for q in block) for block in partition]
    tensor = psi.reshape((2,) * n)
    # precomputed einsum subscripts for each group update
    update_subs = []
    for gi, g in enumerate(groups):
        parts = [_LETTERS[:n]]
        for gj, other in enumerate(groups):
            if gj != gi:
                parts.append("".join(_LETTERS[a] for a in other))
        update_subs.append(",".join(parts) + "->" + "".join(_LETTERS[a] for a in g))

    best = -1.0
    best_factors = None
    histories = []
    for r in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed + r)
        factors = [
            _haar_factor(2 ** len(g), rng).reshape((2,) * len(g)) for g in groups
        ]
        prev = -np.inf
        history = []
        converged = False
        for _ in range(cfg.max_iterations):
            cur = prev
            for gi in range(len(groups)):
                others = [factors[gj].conj() for gj in range(len(groups)) if gj != gi]
                contracted = np.einsum(update_subs[gi], tensor, *others)
                norm = np.linalg.norm(contracted)
                if norm > 0:
                    factors[gi] = contracted / norm
                cur = norm * norm
            history.append(cur)
            if cur - prev < cfg.tolerance:
                converged = True
                break
            prev = cur
        if return_history:
            histories.append(history)
        if not converged:
            raise OracleConvergenceError(
                f"see-saw not converged in {cfg.max_iterations} sweeps "
                f"(best overlap^2 so far {max(best, cur)})"
            )
        if cur > best:
            best = cur
            best_factors = [f.copy() for f in factors]
    state = _assemble_product(best_factors, groups, n)
    state = state / np.linalg.norm(state)
    if return_history:
        return float(best), state, histories
    return float(best), state


def pure_state_measure(psi, k, cfg=None):
    """Geometric measure of `psi` for k-separability: 1 - best overlap^2.

    Maximizes over every partition of the qubits into k groups (a derived
    seed per partition keeps parallel evaluation deterministic).
    """
    cfg = cfg or OracleConfig()
    psi = check_pure_state(psi)
    n = n_qubits_of(len(psi))
    if not 1 <= k <= n <= 6:
        raise ValueError(f"need 1 <= k <= n <= 6, got k={k}, n={n}")
    best = 0.0
    for idx, partition in enumerate(set_partitions(n, k)):
        part_cfg = replace(cfg, seed=cfg.seed + 1000 * idx)
        overlap_sq, _ = closest_grouped_product_state(psi, partition, part_cfg)
        best = max(best, overlap_sq)
    return float(min(max(1.0 - best, 0.0), 1.0))


def _haar_unitary(m, rng):
    g = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def convex_roof_upper_bound(rho, k, ensemble_size, cfg=None, warm_starts=(), state_cfg=None):
    """Upper bound on the convex-roof measure of `rho` by ensemble search.

    Every pure-state ensemble of rho arises from the eigen-ensemble through
    an isometry, so candidates are generated by Haar-random ensemble_size x
    rank isometries (the identity ensemble is always included) and scored by
    the weighted average of pure_state_measure over their elements; the
    minimum over cfg.restarts draws is returned.  `warm_starts` may supply
    known Decompositions of rho (verified to reproduce it) as additional
    candidates.  `state_cfg` configures the inner see-saw; it defaults to a
    lighter configuration, which is safe because an underestimated overlap
    only raises the reported bound.
    """
    cfg = cfg or OracleConfig()
    rho = check_density_matrix(rho)
    n = n_qubits_of(rho.shape[0])
    evals, evecs = np.linalg.eigh(rho)
    keep = evals > 1e-12
    evals, evecs = evals[keep], evecs[:, keep]
    rank = len(evals)
    if not rank <= ensemble_size <= 64:
        raise ValueError(
            f"need rank <= ensemble_size <= 64, got rank={rank}, size={ensemble_size}"
        )
    if state_cfg is None:
        # the inner see-saw can run looser: an under-converged overlap only
        # raises the reported bound, which stays a valid upper bound
        state_cfg = replace(
            cfg,
            restarts=min(cfg.restarts, 5),
            tolerance=max(cfg.tolerance, 1e-9),
            max_iterations=max(cfg.max_iterations, 2000),
        )
    canonical = np.sqrt(evals)[:, None] * evecs.T

    def score(weights, states):
        total = 0.0
        for i, (w, s) in enumerate(zip(weights, states)):
            if w <= 1e-14:
                continue
            elem_cfg = replace(state_cfg, seed=state_cfg.seed + 7919 * i)
            total += w * pure_state_measure(s, k, elem_cfg)
        return total

    best = score(evals, evecs.T)
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.restarts):
        iso = _haar_unitary(ensemble_size, rng)[:, :rank]
        raw = iso @ canonical
        weights = np.linalg.norm(raw, axis=1) ** 2
        states = raw / np.sqrt(np.maximum(weights, 1e-30))[:, None]
        best = min(best, score(weights, states))
    for dec in warm_starts:
        if not isinstance(dec, Decomposition):
            dec = Decomposition(*dec)
        mixture = np.einsum("i,ix,iy->xy", dec.weights, dec.states, dec.states.conj())
        if np.linalg.norm(mixture - rho) > 1e-8:
            raise ValueError("warm-start decomposition does not reproduce rho")
        best = min(best, score(dec.weights, dec.states))
    return float(best)


def bisep_measure_from_transform(f):
    """Biseparability measure by direct maximization of the transform bound.

    Numerically maximizes mu f - 1/2 [mu - 1 + sqrt(1 + mu^2)] over mu >= 0
    (the objective is concave).  At f = 1 the supremum sits at mu -> infinity
    with limiting value 1/2, which is appended as an analytic candidate.
    Validates the closed form 1/2 - sqrt(f (1 - f)).
    """
    if not 0.5 - 1e-12 <= f <= 1.0 + 1e-12:
        raise ValueError(f"f = {f} outside [1/2, 1]")

    def gain(mu):
        return mu * f - 0.5 * (mu - 1.0 + np.sqrt(1.0 + mu * mu))

    _, val = golden_section_max(gain, 0.0, 1e6, xtol=1e-10)
    val = max(val, gain(0.0))
    if f >= 1.0:
        val = max(val, 0.5)
    return float(val)
