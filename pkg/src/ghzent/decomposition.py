"""Optimal convex-roof decompositions on the f- = 0 edge for three qubits.

For f+ in [1/4, 3/4] the state rho(f+) = build_state(3, f+, 0) decomposes
into 28 pure states: a seed vector

    psi1 = a (|000> + |111>) + b (|001> + ... + |110>),
    a = sqrt(f+/2),  b = sqrt((1 - f+)/6),

its three images under the even sigma_z pair operators, and the same
quadruples for six zero-sum phase rotations of psi1.  Every element has
|<GHZ+|psi>|^2 = f+ and <GHZ-|psi> = 0, and the ensemble average of the
pure-state measure meets the lower cathetus closed form, certifying the
convex roof.  For f+ > 3/4 the roof is the line segment mixing rho(3/4)
with |GHZ+>, with weight p = 4 f+ - 3 on the GHZ state.
"""

import numpy as np
from scipy.optimize import nnls

from .family import GhzParams, build_state
from .oracle import OracleConfig, pure_state_measure
from .states import Decomposition, check_pure_state, ghz_plus

SEAM_TOL = 1e-12

# zero-sum z-rotation angle triples generating the seven symmetrized groups
GROUP_PHASES = (
    (0.0, 0.0, 0.0),
    (np.pi / 4, np.pi / 4, -np.pi / 2),
    (-np.pi / 4, -np.pi / 4, np.pi / 2),
    (np.pi / 4, -np.pi / 2, np.pi / 4),
    (-np.pi / 4, np.pi / 2, -np.pi / 4),
    (-np.pi / 2, np.pi / 4, np.pi / 4),
    (np.pi / 2, -np.pi / 4, -np.pi / 4),
)

# Weight of each symmetrized 4-state group.  Solved once from the linear
# reconstruction system (see solve_group_weights) and frozen; the phase-pair
# groups contribute identical matrices, so the split among them is the
# symmetric one.
GROUP_WEIGHTS = (0.25, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125)

__all__ = [
    "GROUP_PHASES",
    "GROUP_WEIGHTS",
    "build_psi1",
    "build_xi",
    "sigma_z_symmetrize",
    "build_optimal_decomposition",
    "decomposition_high_fidelity",
    "solve_group_weights",
    "verify_decomposition",
    "average_entanglement",
]


def build_psi1(f_plus):
    """Seed vector of the 28-state decomposition at the given f+."""
    if not 0.25 - SEAM_TOL <= f_plus <= 0.75 + SEAM_TOL:
        raise ValueError(f"f+ = {f_plus} outside [1/4, 3/4]")
    a = np.sqrt(f_plus / 2.0)
    b = np.sqrt((1.0 - f_plus) / 6.0)
    psi = np.full(8, b, dtype=complex)
    psi[0] = psi[7] = a
    return psi


def _z_rotation_diagonal(phases):
    """Diagonal of exp(i phi1 Z) x exp(i phi2 Z) x exp(i phi3 Z), qubit 1 = MSB."""
    diag = np.ones(8, dtype=complex)
    for idx in range(8):
        theta = sum(
            phi * (1.0 - 2.0 * ((idx >> (2 - j)) & 1)) for j, phi in enumerate(phases)
        )
        diag[idx] = np.exp(1j * theta)
    return diag


def build_xi(f_plus, phases):
    """Phase-rotated seed vector; the three angles must sum to zero."""
    if len(phases) != 3:
        raise ValueError("need exactly three phase angles")
    if abs(sum(phases)) > SEAM_TOL:
        raise ValueError(f"phases must sum to 0, got {sum(phases)}")
    return _z_rotation_diagonal(phases) * build_psi1(f_plus)


def _pair_sign_diagonal(bit_a, bit_b):
    idx = np.arange(8)
    return (-1.0) ** (((idx >> bit_a) & 1) + ((idx >> bit_b) & 1))


# sign diagonals of the even sigma_z pair operators: 1, ZZ1, Z1Z, 1ZZ
_PAIR_SIGNS = (
    np.ones(8),
    _pair_sign_diagonal(2, 1),
    _pair_sign_diagonal(2, 0),
    _pair_sign_diagonal(1, 0),
)


def sigma_z_symmetrize(psi):
    """The four images of a 3-qubit state under 1, ZZ1, Z1Z and 1ZZ."""
    psi = check_pure_state(psi)
    if len(psi) != 8:
        raise ValueError(f"expected a 3-qubit state, got dimension {len(psi)}")
    return [signs * psi for signs in _PAIR_SIGNS]


def _group_members(f_plus):
    """The 28 states, as seven symmetrized quadruples."""
    return [sigma_z_symmetrize(build_xi(f_plus, ph)) for ph in GROUP_PHASES]


def solve_group_weights(f_plus):
    """Solve the linear reconstruction system for the seven group weights.

    Stacks the real and imaginary parts of the seven averaged group
    projectors into a nonnegative least-squares problem against rho(f+)
    (with a sum-to-one row) and symmetrizes the answer over the phase-pair
    groups, whose projectors coincide.  Used as a regression check of the
    frozen GROUP_WEIGHTS.
    """
    groups = _group_members(f_plus)
    mats = [
        sum(np.outer(v, v.conj()) for v in quad) / 4.0 for quad in groups
    ]
    target = build_state(GhzParams(3, f_plus, 0.0))
    columns = [np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in mats]
    a = np.stack(columns, axis=1)
    b = np.concatenate([target.real.ravel(), target.imag.ravel()])
    a = np.vstack([a, np.ones((1, len(mats)))])
    b = np.concatenate([b, [1.0]])
    w, _ = nnls(a, b)
    for i, j in ((1, 2), (3, 4), (5, 6)):
        w[i] = w[j] = 0.5 * (w[i] + w[j])
    return w


def build_optimal_decomposition(f_plus):
    """28-state decomposition of rho(f+) on the f- = 0 edge, f+ in [1/4, 3/4].

    Raises when the reconstruction residual exceeds 1e-10, which would signal
    a wrong weight assignment.
    """
    states = []
    weights = []
    for w_group, quad in zip(GROUP_WEIGHTS, _group_members(f_plus)):
        for v in quad:
            states.append(v)
            weights.append(w_group / 4.0)
    dec = Decomposition(np.array(weights), np.array(states))
    residual = verify_decomposition(dec, build_state(GhzParams(3, f_plus, 0.0)))
    if residual > 1e-10:
        raise ValueError(f"reconstruction residual {residual} exceeds 1e-10")
    return dec


def decomposition_high_fidelity(f_plus):
    """Roof decomposition for f+ in (3/4, 1]: (1-p) rho(3/4) plus p |GHZ+>.

    p = 4 f+ - 3.  Returns 29 elements (the rescaled 28-state decomposition
    of rho(3/4) plus the GHZ term); at f+ = 1 the zero-weight part drops out
    and only |GHZ+> remains.
    """
    if not 0.75 < f_plus <= 1.0 + SEAM_TOL:
        raise ValueError(f"f+ = {f_plus} outside (3/4, 1]")
    p = 4.0 * f_plus - 3.0
    base = build_optimal_decomposition(0.75)
    weights = [p]
    states = [ghz_plus(3)]
    if p < 1.0:
        weights.extend((1.0 - p) * base.weights)
        states.extend(base.states)
    dec = Decomposition(np.array(weights), np.array(states))
    residual = verify_decomposition(dec, build_state(GhzParams(3, f_plus, 0.0)))
    if residual > 1e-10:
        raise ValueError(f"reconstruction residual {residual} exceeds 1e-10")
    return dec


def verify_decomposition(dec, target):
    """Frobenius norm of sum_i p_i |psi_i><psi_i| minus the target matrix."""
    if not isinstance(dec, Decomposition):
        dec = Decomposition(*dec)
    target = np.asarray(target, dtype=complex)
    if dec.states.shape[1] != target.shape[0]:
        raise ValueError("decomposition and target dimensions differ")
    mixture = np.einsum("i,ix,iy->xy", dec.weights, dec.states, dec.states.conj())
    return float(np.linalg.norm(mixture - target))


def average_entanglement(dec, k, cfg=None):
    """Ensemble average sum_i p_i E^(k)(psi_i), by the see-saw oracle.

    This is the convex-roof candidate value of the decomposition; it upper
    bounds the measure of the mixture.  Oracle non-convergence propagates.
    """
    if not isinstance(dec, Decomposition):
        dec = Decomposition(*dec)
    cfg = cfg or OracleConfig()
    return float(
        sum(w * pure_state_measure(psi, k, cfg) for w, psi in dec if w > 0.0)
    )
