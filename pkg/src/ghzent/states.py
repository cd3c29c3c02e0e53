"""Dense complex linear algebra for small qubit registers.

States are plain numpy arrays: a pure state is a normalized complex vector
of length 2**n (qubit 1 is the most significant bit of the computational
index), a density matrix is a Hermitian, positive-semidefinite, unit-trace
complex matrix.  Everything here is a pure function; nothing is mutated.
"""

from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12
HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

__all__ = [
    "Decomposition",
    "check_pure_state",
    "check_density_matrix",
    "tensor_product",
    "ghz_basis",
    "ghz_plus",
    "ghz_minus",
    "density_from_mixture",
    "matrix_sqrt_psd",
    "uhlmann_fidelity",
    "overlap",
    "haar_random_state",
    "random_density_matrix",
    "n_qubits_of",
]


def check_pure_state(psi, tol=NORM_TOL):
    """Return `psi` as a complex 1D array, raising if it is not normalized."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError(f"pure state must be a vector, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state norm {norm} deviates from 1 by more than {tol}")
    return psi


def check_density_matrix(rho, herm_tol=HERM_TOL, trace_tol=TRACE_TOL, psd_tol=PSD_TOL):
    """Validate Hermiticity, unit trace and positivity of a density matrix.

    Returns the matrix as a complex array.  Raises ValueError if any of the
    three invariants is violated beyond its tolerance.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm_dev = np.max(np.abs(rho - rho.conj().T))
    if herm_dev > herm_tol:
        raise ValueError(f"matrix deviates from Hermiticity by {herm_dev}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} deviates from 1 by more than {trace_tol}")
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < -psd_tol:
        raise ValueError(f"minimum eigenvalue {min_eig} below -{psd_tol}")
    return rho


def n_qubits_of(dim):
    """Number of qubits for a Hilbert-space dimension; rejects non powers of 2."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of 2")
    return n


@dataclass(frozen=True)
class Decomposition:
    """Weighted pure-state ensemble: `weights[i]` on the row `states[i]`.

    Weights must be nonnegative and sum to 1 within 1e-12; every state row
    must be normalized.
    """

    weights: np.ndarray
    states: np.ndarray = field(repr=False)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        s = np.atleast_2d(np.asarray(self.states, dtype=complex))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", s)
        if w.ndim != 1 or len(w) == 0 or len(w) != s.shape[0]:
            raise ValueError("need one weight per state and at least one element")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > NORM_TOL:
            raise ValueError(f"weights sum to {w.sum()}, expected 1")
        norms = np.linalg.norm(s, axis=1)
        if np.max(np.abs(norms - 1.0)) > NORM_TOL:
            raise ValueError("all states must be normalized")

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return zip(self.weights, self.states)


def tensor_product(factors):
    """Kronecker product of pure states, first factor most significant.

    Each factor must be normalized; the combined dimension is capped at 2**12.
    """
    if len(factors) == 0:
        raise ValueError("empty factor list")
    out = check_pure_state(factors[0])
    for f in factors[1:]:
        out = np.kron(out, check_pure_state(f))
        if len(out) > 2**12:
            raise ValueError("total dimension exceeds 2**12")
    return out


def ghz_basis(n):
    """Orthonormal basis of (|x> +- |x~>)/sqrt(2) over complement pairs.

    Rows of the returned (2**n, 2**n) array are the basis vectors.  Row 0 is
    (|0..0> + |1..1>)/sqrt(2), row 1 is (|0..0> - |1..1>)/sqrt(2); the
    remaining pairs follow in ascending order of the bitstring x (leading
    bit 0), with + before -.
    """
    if n < 2:
        raise ValueError("need at least 2 qubits")
    dim = 2**n
    basis = np.zeros((dim, dim), dtype=complex)
    row = 0
    for x in range(dim // 2):
        xc = (dim - 1) ^ x
        for sign in (1.0, -1.0):
            basis[row, x] = 1 / np.sqrt(2)
            basis[row, xc] = sign / np.sqrt(2)
            row += 1
    return basis


def ghz_plus(n):
    """(|0..0> + |1..1>)/sqrt(2) on n qubits."""
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1 / np.sqrt(2)
    return v


def ghz_minus(n):
    """(|0..0> - |1..1>)/sqrt(2) on n qubits."""
    v = np.zeros(2**n, dtype=complex)
    v[0] = 1 / np.sqrt(2)
    v[-1] = -1 / np.sqrt(2)
    return v


def density_from_mixture(dec):
    """Density matrix sum_i p_i |psi_i><psi_i| of a Decomposition."""
    if not isinstance(dec, Decomposition):
        dec = Decomposition(*dec)
    return np.einsum("i,ix,iy->xy", dec.weights, dec.states, dec.states.conj())


def matrix_sqrt_psd(m, neg_tol=1e-8):
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues slightly negative from roundoff are clamped to zero; an
    eigenvalue below -neg_tol signals genuinely invalid input and raises.
    """
    m = np.asarray(m, dtype=complex)
    herm_dev = np.max(np.abs(m - m.conj().T))
    if herm_dev > 1e-9:
        raise ValueError(f"matrix deviates from Hermiticity by {herm_dev}")
    evals, evecs = np.linalg.eigh(m)
    if evals[0] < -neg_tol:
        raise ValueError(f"eigenvalue {evals[0]} below -{neg_tol}: not PSD")
    evals = np.clip(evals, 0.0, None)
    return (evecs * np.sqrt(evals)) @ evecs.conj().T


def uhlmann_fidelity(rho, sigma):
    """Mixed-state fidelity F = [Tr sqrt(sqrt(rho) sigma sqrt(rho))]**2.

    Evaluated through the equivalent nuclear-norm form [Tr |sqrt(rho)
    sqrt(sigma)|]**2, which avoids taking square roots of near-zero
    eigenvalues of the sandwiched product.  Symmetric in its arguments; the
    result lies in [0, 1].
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    cross = matrix_sqrt_psd(rho) @ matrix_sqrt_psd(sigma)
    f = float(np.sum(np.linalg.svd(cross, compute_uv=False)) ** 2)
    return min(max(f, 0.0), 1.0)


def overlap(psi, phi):
    """Inner product <phi|psi> (conjugation on phi)."""
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    if psi.shape != phi.shape:
        raise ValueError(f"dimension mismatch: {psi.shape} vs {phi.shape}")
    return complex(np.vdot(phi, psi))


def haar_random_state(dim, rng):
    """Haar-random pure state of the given dimension."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density_matrix(dim, rng, rank=None):
    """Random density matrix from a Ginibre ensemble of the given rank."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
