"""hhm: harmonic manifolds of hypergeometric type as computable objects.

Closed-form geodesic-sphere geometry (density, mean curvature), Einstein
constants and Ricci normalization, spherical functions by hypergeometric
series and by direct ODE integration, the spherical Fourier transform,
volume-entropy estimators and bounds, and the Damek-Ricci classification
of the configurations attaining the entropy lower bound.
"""

from ._kernels import backend_name
from .damek_ricci import (
    CLIFFORD_DIM_BASE,
    DamekRicciSpace,
    dr_normalized_entropy,
    dr_space,
    enumerate_lower_bound,
    enumerate_spaces,
    irreducible_module_dim,
    is_admissible,
)
from .errors import (
    DomainError,
    GridTooShortError,
    MaxSubdivisionsError,
    NoConvergenceError,
    NonNegativeRicciError,
    NotAdmissibleError,
    NotNormalizedError,
    StepTooLargeError,
)
from .model import (
    BoundClassification,
    BoundTag,
    EinsteinConstant,
    GeneralizedDensity,
    HypergeometricParams,
    ModelParams,
    ScaleFactor,
    classify_bounds,
    density_from_mean_curvature,
    einstein_constant,
    entropy_lower_bound,
    entropy_of_normalized,
    entropy_upper_bound,
    hypergeometric_parameters,
    log_theta,
    mean_curvature_from_density,
    normalize_ricci,
    normalized_model,
    rescale,
    sigma,
    theta,
    variable_map,
)
from .radial_ode import (
    RadialSolution,
    frobenius_start,
    hypergeometric_residual,
    ode_residual,
    solve_eigen_ode,
)
from .special import (
    EvalReport,
    gamma_fn,
    gauss_2f1,
    spherical_function,
    sphere_surface_constant,
)
from .transform import (
    RadialProfile,
    TransformResult,
    ball_volume,
    bump_profile,
    entropy_from_sigma,
    entropy_from_volume,
    profile_from_samples,
    quadrature,
    spherical_fourier,
)
from .verify import (
    CheckResult,
    STANDARD_MODELS,
    VerifyConfig,
    VerifyReport,
    bishop_check,
    entropy_bound_scan,
    ledger_check,
    ledger_limits_check,
    ode_vs_2f1_check,
    run_all,
    transformation_check,
    z_reflection_check,
)

__version__ = "0.1.0"
