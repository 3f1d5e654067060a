"""nlsim: spectral simulation and measure diagnostics for the radial NLS /
harmonic-oscillator NLS pair (eigenbasis, Gaussian ensembles, truncated
Hamiltonian flow, quasi-invariance experiments, lens transform, scattering
extraction)."""

from .basis import (
    BasisSpec,
    RadialGrid,
    SpectralField,
    analyze,
    build_grid,
    eigenvalue_sq,
    eigenvalues_sq,
    eval_eigenfunction,
    lp_norm,
    project_sharp,
    project_smooth,
    sobolev_norm,
    synthesize,
    wsp_norm,
)
from .dynamics import (
    FlowConfig,
    Trajectory,
    energy,
    energy_derivative_residual,
    evolve,
    linear_propagate,
    liouville_test,
    nonlinear_rhs,
    propagate,
    propagated_tail_check,
    quasi_invariance_check,
    step,
    strichartz_norm,
    truncation_convergence,
)
from .lens import free_propagate, lens_forward, lens_inverse, nls_solution, time_map, time_map_inv
from .measures import (
    Ensemble,
    WeightedEstimate,
    estimate_weighted_measure,
    gibbs_weight,
    moment_growth_check,
    sample_ensemble,
    tail_fit,
)
from .params import (
    ModelParams,
    admissible,
    alpha,
    delta_exponents,
    horizon,
    lwp_time,
    p_max,
    sigma_admissible,
    sigma_max,
    strichartz_pairs,
)
from .scattering import (
    ScatterReport,
    born_profile,
    extract_u_plus,
    growth_track,
    interaction_part,
    nls_scattering_residual,
    profile_from_duhamel,
    profile_series,
)

__version__ = "0.1.0"
