"""ghzent: geometric measure of multiparticle entanglement for GHZ-symmetric states.

Analytic measure evaluation for every separability class of the
GHZ-symmetric N-qubit family, together with independent brute-force
verifiers (closest-product-state see-saw, random convex-roof decompositions,
witness-transform grid search, fidelity optimization) and the optimal
28-state roof decomposition on the f- = 0 edge.
"""

from .decomposition import (
    average_entanglement,
    build_optimal_decomposition,
    build_psi1,
    build_xi,
    decomposition_high_fidelity,
    sigma_z_symmetrize,
    solve_group_weights,
    verify_decomposition,
)
from .family import (
    GhzParams,
    build_state,
    extract_fidelities,
    k_sep_deltoid_contains,
    product_coefficient_bounds,
    random_product_state,
    twirl,
)
from .measures import (
    MeasureResult,
    SeparablePointError,
    bures_from_geometric,
    bures_measure,
    closed_form_hypotenuse,
    closed_form_lower_cathetus,
    eval_measure,
    groverian_from_geometric,
    groverian_measure,
    legendre_transform,
    measure_objective,
    measure_via_fidelity,
    measure_via_legendre_2d,
    mu_max,
    nu_boundary,
)
from .oracle import (
    OracleConfig,
    OracleConvergenceError,
    bisep_measure_from_transform,
    closest_grouped_product_state,
    convex_roof_upper_bound,
    pure_state_measure,
    set_partitions,
)
from .states import (
    Decomposition,
    density_from_mixture,
    ghz_basis,
    ghz_minus,
    ghz_plus,
    haar_random_state,
    matrix_sqrt_psd,
    overlap,
    random_density_matrix,
    tensor_product,
    uhlmann_fidelity,
)

__version__ = "0.1.0"
