"""Analytic evaluation of the geometric measure for GHZ-symmetric states.

The geometric measure of k-separable entanglement at a triangle point
(f+, f-) reduces to a one-parameter maximization

    E^(k)(f+, f-) = max_mu 1/2 [1 + mu(2 f+ - 1) - sqrt(gamma)
                                + f- (2-c) mu (mu + sqrt(gamma)) / ((2-c) mu - 1)]

with c = 2^(3-k), gamma = (mu - 1)^2 + c mu and mu in [0, mu_max],
mu_max = 2^(k-3)/(2^(k-2) - 1) = 1/(2-c), where the f- coefficient has its
pole; the formula assumes f+ >= f- and the arguments are swapped otherwise.
At k = 3 the f- coefficient reduces to mu (mu + sqrt(alpha)) / (mu - 1) with
alpha = 1 - mu + mu^2 = gamma.  For k = 2 there is a closed form
1/2 - sqrt(f(1-f)) in f = max(f+, f-).  Two independent routes are provided
as cross-checks: a two-parameter witness-transform grid search and, for
three qubits, a closest-separable-state fidelity maximization.

Note on the k = 2 closed form: the sign under the root matters (f(f-1)
would be negative on (1/2, 1)); carrying out the defining maximization
sup_mu {mu f - 1/2 [mu - 1 + sqrt(1 + mu^2)]} analytically (stationarity at
mu/sqrt(1+mu^2) = 2f - 1) gives 1/2 - sqrt(f(1-f)), which is what is
implemented here and what `oracle.bisep_measure_from_transform` validates
numerically.
"""

from dataclasses import dataclass

import numpy as np

from .family import GhzParams, check_class, k_sep_deltoid_contains
from .optimize import golden_section_max, maximize_scalar

__all__ = [
    "MeasureResult",
    "SeparablePointError",
    "measure_objective",
    "eval_measure",
    "closed_form_hypotenuse",
    "closed_form_lower_cathetus",
    "nu_boundary",
    "legendre_transform",
    "measure_via_legendre_2d",
    "measure_via_fidelity",
    "bures_from_geometric",
    "groverian_from_geometric",
    "bures_measure",
    "groverian_measure",
    "mu_max",
]


class SeparablePointError(ValueError):
    """Raised when a method valid only for entangled points gets a separable one."""


@dataclass(frozen=True)
class MeasureResult:
    """Measure value with the optimizer location and the method that produced it."""

    value: float
    method: str
    mu: float | None = None
    nu: float | None = None


def mu_max(k):
    """Upper end 2^(k-3)/(2^(k-2)-1) of the mu interval for class k."""
    if int(k) != k or k < 3:
        raise ValueError(f"mu interval is defined for integer k >= 3, got {k}")
    return 2.0 ** (k - 3) / (2.0 ** (k - 2) - 1.0)


def _objective_raw(mu, f_plus, f_minus, c):
    """Vectorized objective; no domain checks, mu = mu_max is a pole for f- > 0.

    The f- coefficient (2-c) mu (mu + sqrt(gamma)) / ((2-c) mu - 1) comes from
    pushing the second witness weight onto the class-k boundary curve; at
    k = 3 (c = 1) it reduces to mu (mu + sqrt(alpha)) / (mu - 1).
    """
    mu = np.asarray(mu, dtype=float)
    d = 2.0 - c
    gamma = (mu - 1.0) ** 2 + c * mu
    val = 1.0 + mu * (2.0 * f_plus - 1.0) - np.sqrt(gamma)
    if f_minus != 0.0:
        val = val + f_minus * d * mu * (mu + np.sqrt(gamma)) / (d * mu - 1.0)
    return 0.5 * val


def _objective_derivative(mu, f_plus, f_minus, c):
    d = 2.0 - c
    gamma = (mu - 1.0) ** 2 + c * mu
    g = np.sqrt(gamma)
    gamma_d = 2.0 * (mu - 1.0) + c
    deriv = (2.0 * f_plus - 1.0) - gamma_d / (2.0 * g)
    if f_minus != 0.0:
        num = mu * mu + mu * g
        num_d = 2.0 * mu + g + mu * gamma_d / (2.0 * g)
        deriv = deriv + f_minus * d * (num_d * (d * mu - 1.0) - num * d) / (d * mu - 1.0) ** 2
    return 0.5 * deriv


def measure_objective(mu, f_plus, f_minus, k=3):
    """Value of the mu-parametrized lower-bound objective (f+ >= f- assumed).

    Defined for mu in [0, mu_max(k)]; the right endpoint (mu = 1 for k = 3)
    is a pole when f- > 0 and is rejected, while for f- = 0 it evaluates to
    the analytic limit.
    """
    hi = mu_max(k)
    if not 0.0 <= mu <= hi + 1e-12:
        raise ValueError(f"mu={mu} outside [0, {hi}]")
    if f_minus > 0.0 and abs(mu - hi) < 1e-15:
        raise ValueError(f"mu = {hi} is a pole of the objective for f- > 0")
    return float(_objective_raw(mu, f_plus, f_minus, 2.0 ** (3 - k)))


def _maximize_mu(f_plus, f_minus, k):
    """Maximize the objective over its mu interval; returns (mu, value)."""
    c = 2.0 ** (3 - k)
    hi = mu_max(k)
    if f_minus > 0.0:
        hi = hi - 1e-9  # keep clear of the pole; the objective diverges to -inf there
    mu, val = maximize_scalar(
        lambda m: _objective_raw(m, f_plus, f_minus, c),
        0.0,
        hi,
        n_scan=1000,
        xtol=1e-12,
        df=lambda m: _objective_derivative(m, f_plus, f_minus, c),
    )
    return mu, max(val, 0.0)


def eval_measure(params, k):
    """Geometric measure E^(k) of the GHZ-symmetric state at `params`.

    Dispatch: the k = 2 closed form, or the mu maximization for k >= 3.
    The f+ >= f- convention is enforced by swapping, and the result is
    clamped to [0, 1].
    """
    if not isinstance(params, GhzParams):
        params = GhzParams(*params)
    k = check_class(k, params.n_qubits)
    fp = max(params.f_plus, params.f_minus)
    fm = min(params.f_plus, params.f_minus)
    fp, fm = min(max(fp, 0.0), 1.0), min(max(fm, 0.0), 1.0)
    if k == 2:
        if fp < 0.5:
            return MeasureResult(0.0, "bisep-closed-form")
        value = 0.5 - np.sqrt(fp * (1.0 - fp))
        return MeasureResult(float(min(max(value, 0.0), 1.0)), "bisep-closed-form")
    mu, value = _maximize_mu(fp, fm, k)
    value = float(min(max(value, 0.0), 1.0))
    nu = float(nu_boundary(mu, k)) if 0.0 < mu < mu_max(k) else None
    return MeasureResult(value, "mu-search", mu=float(mu), nu=nu)


def closed_form_hypotenuse(f_plus):
    """Measure on the triangle edge f+ + f- = 1 (with f+ >= 1/2)."""
    if not 0.5 - 1e-12 <= f_plus <= 1 + 1e-12:
        raise ValueError(f"f+ = {f_plus} outside [1/2, 1]")
    rad = 1.0 - (2.0 * f_plus - 1.0) ** 2
    return 0.5 * (1.0 - np.sqrt(max(rad, 0.0)))


def closed_form_lower_cathetus(f_plus):
    """Measure on the edge f- = 0: quadratic-root branch then linear branch.

    Below f+ = 1/4 the point is separable and the value is 0; the two
    branches join continuously at f+ = 3/4 with value 1/4.
    """
    if not -1e-12 <= f_plus <= 1 + 1e-12:
        raise ValueError(f"f+ = {f_plus} outside [0, 1]")
    if f_plus < 0.25:
        return 0.0
    if f_plus <= 0.75:
        val = 0.25 * (1.0 + 2.0 * f_plus - 2.0 * np.sqrt(3.0) * np.sqrt(f_plus * (1.0 - f_plus)))
        return float(max(val, 0.0))
    return float(f_plus - 0.5)


def nu_boundary(mu, k=3):
    """Boundary curve nu(mu) separating the two branches of the transform.

    The crossing locus of the product branch and the GHZ branch for class k:

        nu = (2 - c) mu [mu + sqrt(gamma)] / [2 ((2 - c) mu - 1)],
        c = 2^(3-k),  gamma = (mu - 1)^2 + c mu,

    defined for mu in [0, mu_max(k)), nonpositive there, and diverging at the
    right end.  For k = 3 this is [mu^2 + mu sqrt(1 - mu + mu^2)] / [2 (mu - 1)]
    on [0, 1).
    """
    hi = mu_max(k)
    if not 0.0 <= mu < hi:
        raise ValueError(f"mu = {mu} outside [0, {hi})")
    c = 2.0 ** (3 - k)
    d = 2.0 - c
    gamma = (mu - 1.0) ** 2 + c * mu
    return d * mu * (mu + np.sqrt(gamma)) / (2.0 * (d * mu - 1.0)) + 0.0


def _transform_product_branch(mu, k):
    """Transform branch from the all-|+> product direction (nu-independent)."""
    c = 2.0 ** (3 - k)
    return 0.5 * (mu - 1.0 + np.sqrt((mu - 1.0) ** 2 + c * mu))


def _transform_ghz_branch(mu, nu):
    """Transform branch from the |0..0> direction.

    1/2 [mu + nu - 1 + sqrt(1 + (mu - nu)^2)]: the radicand carries a plus
    sign (top eigenvalue of a rank-one update of diag(mu, nu, 0)); it reduces
    to the k = 2 form at nu = 0, and its crossing locus with the product
    branch is exactly nu_boundary.
    """
    return 0.5 * (mu + nu - 1.0 + np.sqrt(1.0 + (mu - nu) ** 2))


def legendre_transform(mu, nu, k):
    """Transform value hat-E(mu, nu) of the k-separability measure.

    Piecewise: for 0 <= mu < mu_max(k) with nu below nu_boundary(mu, k) the
    nu-independent product branch applies; otherwise (mu >= 0) the GHZ
    branch; both negative arguments give 0, and a negative mu with
    nonnegative nu is handled by the mu <-> nu symmetry.  For k = 2 the
    transform is 1/2 [mu - 1 + sqrt(1 + mu^2)] with nu fixed to 0.
    """
    if int(k) != k or k < 2:
        raise ValueError(f"invalid class k = {k}")
    if k == 2:
        if nu != 0.0:
            raise ValueError("the k = 2 transform is defined on the nu = 0 axis")
        return float(0.5 * (mu - 1.0 + np.sqrt(1.0 + mu * mu)))
    if mu < 0.0 and nu < 0.0:
        return 0.0
    if mu < 0.0:
        mu, nu = nu, mu
    if 0.0 <= mu < mu_max(k) and nu < nu_boundary(mu, k):
        return float(_transform_product_branch(mu, k))
    return float(_transform_ghz_branch(mu, nu))


def measure_via_legendre_2d(params, k, grid=2000):
    """Measure by maximizing mu f+ + nu f- - hat-E(mu, nu); checks eval_measure.

    The supremum over the witness parameters sits on the boundary curve
    nu = nu_boundary(mu), so the search grids that curve (refined by a
    golden-section pass) and adds a rectangle of GHZ-branch points above the
    curve as extra candidates.
    """
    if not isinstance(params, GhzParams):
        params = GhzParams(*params)
    k = check_class(k, params.n_qubits)
    if k < 3:
        raise ValueError("the two-parameter search applies to k >= 3")
    if grid < 100:
        raise ValueError("grid resolution must be at least 100")
    fp = max(params.f_plus, params.f_minus)
    fm = min(params.f_plus, params.f_minus)
    pole = mu_max(k)
    hi = pole - 1e-9

    def curve_value(mu):
        return mu * fp + nu_boundary(mu, k) * fm - _transform_product_branch(mu, k)

    c = 2.0 ** (3 - k)
    d = 2.0 - c
    xs = np.linspace(0.0, hi, grid)
    with np.errstate(divide="ignore", invalid="ignore"):
        gam = np.sqrt((xs - 1.0) ** 2 + c * xs)
        nus = d * xs * (xs + gam) / (2.0 * (d * xs - 1.0))
        nus[0] = 0.0
        vals = xs * fp + nus * fm - _transform_product_branch(xs, k)
    i = int(np.nanargmax(vals))
    _, best = golden_section_max(
        curve_value, xs[max(i - 1, 0)], xs[min(i + 1, grid - 1)], xtol=1e-12
    )
    best = max(best, 0.0)
    if fm == 0.0:
        best = max(best, pole * fp - _transform_product_branch(pole, k))
    # GHZ-branch candidates above the curve
    for mu in np.linspace(1e-6, 1.0, 80):
        lo_nu = nu_boundary(mu, k) if mu < pole else -3.0
        nu_grid = np.linspace(max(lo_nu, -3.0), 1.0, 80)
        cand = mu * fp + nu_grid * fm - _transform_ghz_branch(mu, nu_grid)
        best = max(best, float(np.max(cand)))
    return float(min(best, 1.0))


def measure_via_fidelity(params):
    """Three-qubit measure as 1 minus the best fidelity with a border state.

    The closest separable state to an entangled point with f+ > f- sits on
    the region border f+ = 1/4 + f-/2; both states are diagonal in the GHZ
    basis, so the fidelity is an explicit function of a single border
    parameter mu in [0, 1/2], maximized here by scan plus golden section
    (the endpoints are always candidates; the f- = 0 optimum is at mu = 1/2).
    Only valid for entangled points: the expression is nonzero but wrong on
    separable ones, which are rejected.
    """
    if not isinstance(params, GhzParams):
        params = GhzParams(*params)
    if params.n_qubits != 3:
        raise ValueError("the fidelity route is specific to 3 qubits")
    fp, fm = params.f_plus, params.f_minus
    if k_sep_deltoid_contains(params, 3):
        raise SeparablePointError(
            f"({fp}, {fm}) is separable; the fidelity route needs an entangled point"
        )
    if not fp > fm:
        raise ValueError("the fidelity route assumes f+ > f-")
    a = np.sqrt(3.0) * np.sqrt(max(1.0 - fp - fm, 0.0))
    b = 2.0 * np.sqrt(fm)
    c = np.sqrt(fp)

    def fid(mu):
        return 0.25 * (
            a * np.sqrt(1.0 - 2.0 * mu) + b * np.sqrt(mu) + c * np.sqrt(1.0 + 2.0 * mu)
        ) ** 2

    _, fmax = maximize_scalar(fid, 0.0, 0.5, n_scan=1000, xtol=1e-12)
    return float(min(max(1.0 - fmax, 0.0), 1.0))


def bures_from_geometric(value):
    """Bures entanglement 2 - 2 sqrt(1 - E) from a geometric-measure value."""
    if not -1e-12 <= value <= 1 + 1e-12:
        raise ValueError(f"measure value {value} outside [0, 1]")
    return float(2.0 - 2.0 * np.sqrt(max(1.0 - value, 0.0)))


def groverian_from_geometric(value):
    """Groverian entanglement sqrt(E) from a geometric-measure value."""
    if not -1e-12 <= value <= 1 + 1e-12:
        raise ValueError(f"measure value {value} outside [0, 1]")
    return float(np.sqrt(max(value, 0.0)))


def bures_measure(params, k):
    """Bures measure of the GHZ-symmetric state at `params` for class k."""
    return float(bures_from_geometric(eval_measure(params, k).value))


def groverian_measure(params, k):
    """Groverian measure of the GHZ-symmetric state at `params` for class k."""
    return float(groverian_from_geometric(eval_measure(params, k).value))
