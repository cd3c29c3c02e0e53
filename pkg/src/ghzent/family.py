"""GHZ-symmetric N-qubit states: construction, twirling, separability regions.

The family is the two-parameter set

    rho(f+, f-) = f+ |GHZ+><GHZ+| + f- |GHZ-><GHZ-| + (1 - f+ - f-) Pi / (2^N - 2)

with Pi the projector onto the complement of the two GHZ states.  The valid
parameters form a triangle: f+, f- >= 0 and f+ + f- <= 1.  These states are
invariant under qubit permutations, the collective spin flip, and correlated
z-rotations with angles summing to zero, and they carry the least
entanglement among all states with the same GHZ fidelities.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .states import (
    check_density_matrix,
    ghz_minus,
    ghz_plus,
    haar_random_state,
    n_qubits_of,
    tensor_product,
)

PARAM_TOL = 1e-12

__all__ = [
    "GhzParams",
    "build_state",
    "extract_fidelities",
    "twirl",
    "k_sep_deltoid_contains",
    "product_coefficient_bounds",
    "random_product_state",
    "check_class",
]


@dataclass(frozen=True)
class GhzParams:
    """A point (f+, f-) of the GHZ-symmetric triangle for n_qubits qubits."""

    n_qubits: int
    f_plus: float
    f_minus: float

    def __post_init__(self):
        if int(self.n_qubits) != self.n_qubits or self.n_qubits < 2:
            raise ValueError(f"need an integer qubit count >= 2, got {self.n_qubits}")
        fp, fm = self.f_plus, self.f_minus
        if fp < -PARAM_TOL or fm < -PARAM_TOL or fp + fm > 1 + PARAM_TOL:
            raise ValueError(f"(f+, f-) = ({fp}, {fm}) outside the triangle")


def check_class(k, n_qubits):
    """Validate a separability class: integer k with 2 <= k <= n_qubits."""
    if int(k) != k or not 2 <= k <= n_qubits:
        raise ValueError(f"separability class k={k} invalid for {n_qubits} qubits")
    return int(k)


def build_state(params):
    """Density matrix of the GHZ-symmetric state at the given parameters.

    The result is diagonal in the GHZ basis, with computational-basis entries
    rho[0,0] = rho[-1,-1] = (f+ + f-)/2, rho[0,-1] = (f+ - f-)/2 and all other
    diagonal entries equal to (1 - f+ - f-)/(2^N - 2).
    """
    if not isinstance(params, GhzParams):
        params = GhzParams(*params)
    dim = 2**params.n_qubits
    fp, fm = params.f_plus, params.f_minus
    rho = np.zeros((dim, dim), dtype=complex)
    np.fill_diagonal(rho, (1.0 - fp - fm) / (dim - 2))
    rho[0, 0] = rho[-1, -1] = (fp + fm) / 2.0
    rho[0, -1] = rho[-1, 0] = (fp - fm) / 2.0
    return rho


def extract_fidelities(rho):
    """GHZ fidelities (f+, f-) = (<GHZ+|rho|GHZ+>, <GHZ-|rho|GHZ->)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    n = n_qubits_of(rho.shape[0])
    if n < 2:
        raise ValueError("need at least a 4-dimensional (2-qubit) matrix")
    gp, gm = ghz_plus(n), ghz_minus(n)
    fp = np.vdot(gp, rho @ gp)
    fm = np.vdot(gm, rho @ gm)
    if max(abs(fp.imag), abs(fm.imag)) > 1e-10:
        raise ValueError("fidelities have a non-negligible imaginary part")
    return float(fp.real), float(fm.real)


def twirl(rho):
    """Project a density matrix onto the GHZ-symmetric family.

    Averaging over the symmetry group (plus the basis permutations that even
    out the block diagonal for N > 3) fixes exactly this family and preserves
    the two GHZ fidelities, so the channel is evaluated analytically: read off
    (f+, f-) and rebuild.  Idempotent, trace preserving and positive.
    """
    rho = check_density_matrix(rho)
    n = n_qubits_of(rho.shape[0])
    fp, fm = extract_fidelities(rho)
    fp, fm = min(max(fp, 0.0), 1.0), min(max(fm, 0.0), 1.0)
    return build_state(GhzParams(n, fp, fm))


def _inside_halfplane(f_a, f_b, k):
    """Exact-or-slack test of f_a <= [1 + (2^(k-1) - 2) f_b] / 2^(k-1)."""
    s = 1 << (k - 1)
    if Fraction(f_a) * s <= 1 + (s - 2) * Fraction(f_b):
        return True
    return f_a <= (1.0 + (s - 2) * f_b) / s + PARAM_TOL


def k_sep_deltoid_contains(params, k):
    """True when the parameter point is k-separable, i.e. the measure is 0.

    For k >= 3 the region is the kite-shaped area bounded by
    f+ <= [1 + (2^(k-1) - 2) f-] / 2^(k-1) and its mirror image; for k = 2 it
    is the square max(f+, f-) <= 1/2.  Boundary points count as inside
    (the measure vanishes there), hence the exact-arithmetic comparison with
    a small slack fallback.
    """
    if not isinstance(params, GhzParams):
        params = GhzParams(*params)
    k = check_class(k, params.n_qubits)
    fp, fm = params.f_plus, params.f_minus
    if k == 2:
        f = max(fp, fm)
        return f <= 0.5 or f <= 0.5 + PARAM_TOL
    return _inside_halfplane(fp, fm, k) and _inside_halfplane(fm, fp, k)


def product_coefficient_bounds(alpha1_sq, alpha2_sq, k):
    """Achievability of GHZ+/GHZ- overlaps (alpha1^2, alpha2^2) for k-separable states.

    Returns True when the pair lies in the convex hull of the squared GHZ
    overlaps of pure k-separable states: alpha1^2 <= [1 + (2^(k-1) - 2)
    alpha2^2] / 2^(k-1) and symmetrically.
    """
    if alpha1_sq < -PARAM_TOL or alpha2_sq < -PARAM_TOL:
        raise ValueError("squared overlaps must be nonnegative")
    if alpha1_sq + alpha2_sq > 1 + PARAM_TOL:
        raise ValueError("squared overlaps must sum to at most 1")
    if int(k) != k or k < 2:
        raise ValueError(f"need an integer class k >= 2, got {k}")
    if k == 2:
        return max(alpha1_sq, alpha2_sq) <= 0.5 + PARAM_TOL
    return _inside_halfplane(alpha1_sq, alpha2_sq, int(k)) and _inside_halfplane(
        alpha2_sq, alpha1_sq, int(k)
    )


def random_product_state(n, rng):
    """Fully product n-qubit state with Haar-random single-qubit factors."""
    return tensor_product([haar_random_state(2, rng) for _ in range(n)])
