"""Mutual information of a finite discrete input by direct numerical integration.

This is the ground truth every closed form in the package is checked against;
it shares no code path with them beyond the channel law.
"""

import math

import numpy as np

from .channel import DiscreteInput, log_conditional_density, on_off_from_snr
from .quadrature import QuadratureSpec, integrate

# Integration cutoff in units of the widest component's mean output.
_CUTOFF_MEANS = 50.0


def _integrand(xs, log_ps):
    def f(y):
        logs = log_conditional_density(y[None, :], xs[:, None])
        weighted = logs + log_ps[:, None]
        peak = weighted.max(axis=0)
        log_mix = peak + np.log(np.exp(weighted - peak).sum(axis=0))
        # exp(logs) underflows to 0 far in the tail; the log-ratio stays finite,
        # so those terms contribute exactly 0 as t ln t -> 0 requires.
        return (np.exp(weighted) * (logs - log_mix)).sum(axis=0)
    return f


def _cutoff(xs, ps, abs_tol):
    """Upper limit Y with the neglected tail provably below abs_tol.

    Each tail term obeys p_i f_i |ln(f_i/m)| <= m/e + p_i f_i |ln p_i|, and the
    mixture m integrates over [Y, inf) to at most exp(-Y / s_max).
    """
    s_max = 1.0 + xs[-1] ** 2
    weight = len(xs) / math.e + max(-math.log(p) for p in ps)
    y = _CUTOFF_MEANS * s_max
    if weight * math.exp(-y / s_max) > abs_tol:
        y = s_max * math.log(weight / abs_tol)
    return y


def mutual_information(inp, quad=QuadratureSpec()):
    """I(X;Y) in nats for a discrete input over the non-coherent Rayleigh channel.

    Evaluates sum_i p_i int_0^inf f(y|x_i) ln[f(y|x_i) / sum_j p_j f(y|x_j)] dy
    with the mixture formed by a max-shifted log-sum-exp.

    Raises:
        ConvergenceError: the quadrature ran out of subdivisions.
    """
    if not isinstance(inp, DiscreteInput):
        inp = DiscreteInput(inp)
    if len(inp) == 1:
        return 0.0
    xs = np.array(inp.locations)
    ps = np.array(inp.probabilities)
    y_max = _cutoff(xs, ps, quad.abs_tol)

    scales = 1.0 + xs ** 2
    marks = np.concatenate([scales, 5.0 * scales, 20.0 * scales])
    breakpoints = np.concatenate([[0.0, 1.0, y_max], marks[marks < y_max]])
    value, _ = integrate(_integrand(xs, np.log(ps)), breakpoints, quad)
    return value


def on_off_mutual_information(a, x1, quad=QuadratureSpec()):
    """Oracle MI of the on-off input with p1 = a / x1^2."""
    return mutual_information(on_off_from_snr(a, x1).to_discrete(), quad)


def mi_gradient_x1(a, x1, quad=QuadratureSpec(), h=None):
    """Central difference dI/dx1 along the power-constrained on-off family.

    p1 = a / x1^2 is re-derived at x1 + h and x1 - h.  ``h`` defaults to
    ``1e-4 * x1``.
    """
    if h is None:
        h = 1e-4 * x1
    if not h > 0.0:
        raise ValueError(f"step h must be positive, got {h!r}")
    if not x1 - h > math.sqrt(a):
        raise ValueError("x1 - h must stay above sqrt(a)")
    upper = on_off_mutual_information(a, x1 + h, quad)
    lower = on_off_mutual_information(a, x1 - h, quad)
    return (upper - lower) / (2.0 * h)
