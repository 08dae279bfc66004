"""convroof: convex-roof entanglement measures via Stiefel-manifold optimization."""

from .cmatio import load_cmat, save_cmat
from .convexroof import (
    ObjectivePair,
    convex_sum,
    create_convex_functions,
    grad_convex_sum,
    ps_decomposition,
)
from .linalg import (
    SpectralData,
    complete_gram_schmidt,
    density_eig,
    expm_antihermitian,
    ptrace,
    rand_density_matrix,
    rand_state,
    rand_unitary,
)
from .measures import (
    MeasureHandle,
    NonSmoothPointWarning,
    entropy_of_entanglement,
    eof2x2,
    get_measure,
    grad_entropy_of_entanglement,
    grad_meyer_wallach,
    grad_tangle,
    measure_names,
    meyer_wallach,
    register_measure,
    tangle,
)
from .optimize import (
    OptimizationResult,
    TerminationOptions,
    bfgs_min,
    cg_min,
    check_termination,
    convex_roof_minimize,
    minimize1d_exp,
    minimize1d_lin,
    riemannian_gradient,
)
from .references import (
    eof_isotropic,
    ghz_state,
    ghzw_mixture,
    isotropic_state,
    max_entangled_state,
    tangle_ghzw,
    w_state,
)
from .stiefel import (
    build_unitary,
    chart_backend,
    create_eh_functions,
    decompose_unitary,
    dim_st,
    grad_build_unitary,
    grad_eh_adapt,
)

__version__ = "0.1.0"
