"""Laplace-equation Dirichlet solvers on the disc and harmonic image processing."""
from .boundary import (
    BoundarySpec,
    FourierCoefficients,
    eval_boundary,
    fourier_coefficients,
    load_samples_csv,
    parse_expression,
)
from .checks import (
    ScalarField2D,
    fd_laplacian,
    is_harmonic,
    max_principle_check,
    mean_value_residual,
    poisson_field,
    solution_field,
)
from .errors import BoundarySpecError, ConvergenceError, DomainError, HarmonicError, SolvabilityError
from .grid import SolveReport, solve_grid, stencil_residual
from .imaging import denoise, dirichlet_energy, inpaint, upsample_harmonic
from .poisson import kernel_mass, poisson_kernel, solve_poisson
from .polar import PolarPoint
from .spectral import DiscSolution, eval_solution, solve_spectral
from .stochastic import (
    McConfig,
    McEstimate,
    Method,
    estimate_from_exits,
    mc_solve,
    sample_exact_exit,
    walk_on_spheres_step,
)

__version__ = "0.1.0"
