"""Transmuted heat polynomials for ``u_xx - q(x) u = u_t``.

The package builds formal powers of a nonvanishing particular solution,
turns heat polynomials into exact solutions of the variable-coefficient
equation, and fits them to initial/boundary or Cauchy data.
"""
from .cauchy import CauchyProblem, cauchy_solution
from .collocation import (
    IBVProblem,
    assemble,
    evaluate_on_mesh,
    parabolic_boundary_points,
    solve_ibvp,
)
from .estimator import TransmutedHeatFeatures, TransmutedHeatRegressor
from .exceptions import (
    CompatibilityError,
    ConvergenceFailure,
    DomainError,
    NoConvergence,
    NonvanishingViolation,
    ParseError,
    SingularSystemError,
)
from .fdm import crank_nicolson
from .formal_powers import alpha_corrected_power, formal_powers, recurrent_integrals
from .gridfn import antiderivative_from_zero, chebyshev_grid, interpolate, sample
from .heat_basis import TransmutedHeatBasis, heat_polynomial
from .lsq import svd_least_squares
from .spps import nonvanishing_solution, solve_ivp_series

__version__ = "0.1.0"
