"""Exact low-SNR capacity of the discrete-time non-coherent Rayleigh fading channel."""

from .channel import (DiscreteInput, OnOffInput, conditional_density,
                      log_conditional_density, on_off_from_snr)
from .closed_form import (capacity_at, delta_awgn, delta_coherent, energy_per_nat,
                          mi_closed_form, penalty_per_snr, sublinear_delta)
from .errors import ConstraintError, ConvergenceError, DomainError, SnrRangeError
from .optimizer import (EdgeConstants, OptimumResult, capacity_bounds, edge_constants,
                        eq11_residual, phi, snr_from_x1, solve_x1, x1_lower_bound,
                        x1_upper_bound)
from .oracle import mi_gradient_x1, mutual_information
from .quadrature import QuadratureSpec
from .specfun import LambertBranch, hyp2f1_1b, lambert_w

__version__ = "0.1.0"
