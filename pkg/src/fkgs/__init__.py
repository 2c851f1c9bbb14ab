"""Conservative Fourier pseudo-spectral solvers for the fractional Klein-Gordon-Schrodinger system.

The space-fractional system

    i phi_t + 1/2 (-(-Lap)^{a/2}) phi + u phi = 0
    u_tt + (-Lap)^{b/2} u + u - |phi|^2 = 0

is discretised on a periodic box with a Fourier collocation operator and
advanced in time by averaged vector field (AVF) schemes and their partitioned
variants, which keep the discrete energy (and for the partitioned family also
the mass) to solver tolerance.
"""

__version__ = "0.1.0"

from .avf import bilinear_mean, linear_midpoint, quadratic_mean
from .harness import (
    EXAMPLES,
    RunConfig,
    bench,
    closed_form_error,
    invariant_series,
    run,
    spatial_error_table,
    temporal_error_table,
)
from .integrators import (
    SchemeKind,
    StepFailure,
    StepReport,
    count_steps,
    evolve,
    step,
    step_favf,
    step_fpavf,
    step_fpavf_adjoint,
    step_fpavf_c,
    step_fpavf_p,
)
from .model import InitialData, InputError, Params, State, energy, initialize, mass
from .spectral import GridSpec, apply_neg_frac_laplacian, make_grid, make_multiplier

__all__ = [
    "EXAMPLES",
    "GridSpec",
    "InitialData",
    "InputError",
    "Params",
    "RunConfig",
    "SchemeKind",
    "State",
    "StepFailure",
    "StepReport",
    "apply_neg_frac_laplacian",
    "bench",
    "bilinear_mean",
    "closed_form_error",
    "count_steps",
    "energy",
    "evolve",
    "initialize",
    "invariant_series",
    "linear_midpoint",
    "make_grid",
    "make_multiplier",
    "mass",
    "quadratic_mean",
    "run",
    "spatial_error_table",
    "step",
    "step_favf",
    "step_fpavf",
    "step_fpavf_adjoint",
    "step_fpavf_c",
    "step_fpavf_p",
    "temporal_error_table",
]
