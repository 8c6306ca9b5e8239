"""Optimal on-off input at low SNR, the branch-switch edge point, and mass-point bounds.

The optimal non-zero mass point x1 solves the stationarity condition

    u - (1+u) ln(1+u) - pi (a/(u+u^2))^(1/u) csc(pi/u) [1 + u - pi cot(pi/u) + ln(a/(u+u^2))] = 0

with u = x1^2, or equivalently

    a = exp[u W_k(phi(x1)) - u + pi cot(pi/u) + ln u + ln(1+u) - 1],

with k = -1 below the edge SNR a0 and k = 0 above it.  Roots are always
sought in u.
"""

import functools
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from . import closed_form
from .errors import ConvergenceError, DomainError, SnrRangeError
from .specfun import LambertBranch, lambert_w

SNR_CEILING = 0.1

_INV_E = math.exp(-1.0)
_ROOT_RTOL = 4.0 * 2.220446049250313e-16


def _check_u(u, what="x1"):
    if not u > 1.0:
        raise DomainError(f"{what}^2 must exceed 1, got {u!r}")


def phi_u(u):
    """phi as a function of u = x^2; see :func:`phi`."""
    _check_u(u, "x")
    t = math.pi / u
    bracket = -u + math.log1p(u) + u * math.log1p(u)
    return (-math.sin(t) * bracket / (math.pi * u)
            * math.exp(-math.pi / math.tan(t) / u + 1.0 + 1.0 / u))


def phi(x):
    """Lambert-W argument of the mass-point/SNR relation.

    phi(x) = -sin(pi/x^2) (-x^2 + ln(1+x^2) + x^2 ln(1+x^2)) / (pi x^2)
             * exp(-pi cot(pi/x^2)/x^2 + 1 + 1/x^2)

    Negative for all x > 1, increasing towards 0 as x grows.
    """
    return phi_u(x * x)


def eq11_residual_u(u, a):
    _check_u(u)
    if not a > 0.0:
        raise DomainError(f"SNR must be positive, got {a!r}")
    t = math.pi / u
    log_ratio = math.log(a) - math.log(u + u * u)
    csc_factor = math.pi * math.exp(log_ratio / u) / math.sin(t)
    return (u - (1.0 + u) * math.log1p(u)
            - csc_factor * (1.0 + u - math.pi / math.tan(t) + log_ratio))


def eq11_residual(x1, a):
    """Left-hand side of the stationarity condition at (x1, a); zero at the optimum."""
    return eq11_residual_u(x1 * x1, a)


def snr_from_u(u, branch):
    _check_u(u)
    w = lambert_w(branch, phi_u(u))
    t = math.pi / u
    return math.exp(u * w - u + math.pi / math.tan(t) + math.log(u) + math.log1p(u) - 1.0)


def snr_from_x1(x1, branch):
    """SNR for which x1 is the optimal mass point, on the given Lambert branch.

    Raises:
        DomainError: phi(x1) lies outside the branch domain (x1 < x0).
    """
    return snr_from_u(x1 * x1, LambertBranch(branch))


@dataclass(frozen=True)
class EdgeConstants:
    """Branch-switch point: phi(x0) = -1/e, a0 = snr(x0), xi0 = ln a0 + x0^2."""

    x0_sq: float
    a0: float
    xi0: float

    @property
    def x0(self):
        return math.sqrt(self.x0_sq)


@functools.lru_cache(maxsize=None)
def edge_constants():
    """Locate x0 by bracketed root finding of phi(x) + 1/e on x in [1.5, 10].

    Computed once; later calls return the cached value.
    """
    try:
        x0 = brentq(lambda x: phi(x) + _INV_E, 1.5, 10.0, xtol=1e-15, rtol=_ROOT_RTOL, maxiter=200)
    except ValueError as exc:
        raise ConvergenceError(f"could not bracket phi(x) = -1/e: {exc}") from exc
    x0_sq = x0 * x0
    a0 = snr_from_u(x0_sq, LambertBranch.LOWER)
    return EdgeConstants(x0_sq=x0_sq, a0=a0, xi0=math.log(a0) + x0_sq)


@dataclass(frozen=True)
class OptimumResult:
    x1: float
    p1: float
    branch_used: LambertBranch
    residual: float

    @property
    def u(self):
        return self.x1 * self.x1


def _residual_tol(u):
    return 1e-10 * (1.0 + u * math.log1p(u))


def check_snr(a, ceiling=SNR_CEILING):
    if not (math.isfinite(a) and a > 0.0):
        raise SnrRangeError(f"SNR must be a positive finite number, got {a!r}")
    if a > ceiling:
        raise SnrRangeError(
            f"SNR a = {a!r} exceeds the validated low-SNR ceiling of {ceiling}")


def _lower_bracket(a, edge):
    lo = edge.x0_sq
    try:
        lb = x1_lower_bound(a)
    except (DomainError, ConvergenceError):
        return lo
    if lb * lb > lo and eq11_residual_u(lb * lb, a) < 0.0:
        return lb * lb
    return lo


@functools.lru_cache(maxsize=4096)
def solve_x1(a):
    """Optimal non-zero mass point for 0 < a <= 0.1.

    Brackets the root in u = x1^2 with the analytic bounds
    [max(x0^2, x1_lb^2), -ln a + xi0] when a <= a0, or [x0^2, x0^2 + 20]
    (widened geometrically if needed) above a0, then runs Brent's method.

    Raises:
        SnrRangeError: a outside (0, 0.1].
        ConvergenceError: no sign change found, or residual above tolerance.
    """
    a = float(a)
    check_snr(a)
    edge = edge_constants()
    branch = LambertBranch.LOWER if a <= edge.a0 else LambertBranch.PRINCIPAL

    def f(u):
        return eq11_residual_u(u, a)

    lo = edge.x0_sq
    f_lo = f(lo)
    if abs(f_lo) <= _residual_tol(lo):
        u = lo
    else:
        if branch is LambertBranch.LOWER:
            lo = _lower_bracket(a, edge)
            hi = -math.log(a) + edge.xi0
        else:
            hi = edge.x0_sq + 20.0
            while f(hi) <= 0.0 and hi < 1e4:
                hi = edge.x0_sq + 2.0 * (hi - edge.x0_sq)
        if not f(lo) < 0.0 < f(hi):
            raise ConvergenceError(f"no sign change of the stationarity residual on [{lo}, {hi}] at a = {a!r}")
        u = brentq(f, lo, hi, xtol=1e-15, rtol=_ROOT_RTOL, maxiter=500)

    residual = f(u)
    if abs(residual) > _residual_tol(u):
        raise ConvergenceError(f"stationarity residual {residual:.3e} too large at a = {a!r}")
    x1 = math.sqrt(u)
    return OptimumResult(x1=x1, p1=a / u, branch_used=branch, residual=residual)


def x1_upper_bound(a, edge=None):
    """sqrt(-ln a + xi0), valid for a <= a0."""
    edge = edge or edge_constants()
    if not 0.0 < a <= edge.a0:
        raise SnrRangeError(f"upper bound on x1 holds only for 0 < a <= a0 = {edge.a0!r}, got {a!r}")
    return math.sqrt(-math.log(a) + edge.xi0)


LOWER_BOUND_READINGS = ("sqrt", "literal", "quotient")


def x1_lower_bound(a, reading="sqrt"):
    """Lower bound on the optimal mass point for a <= a0, lower Lambert branch.

    With y = sqrt(1 + ln(1/a)), the bound is y / sqrt(-W_{-1}(phi(v))), where
    the inner amplitude v has three candidate readings:

    ``"sqrt"``     v = y / sqrt(-ln(-phi(y)))   (default; one fixed-point step
                   of u = y^2 / -W_{-1}(phi(sqrt u)) from its first-order seed)
    ``"literal"``  v = y / (-ln(-phi(y)))
    ``"quotient"`` W_{-1} applied to phi(y) / (-ln(-phi(y))) instead of phi(v)

    Only "sqrt" bounds the optimum from below on the whole range and improves
    on x0; the others are kept for comparison.  May fall below x0, so callers
    wanting the tightest valid bound use ``max(x0, x1_lower_bound(a))``.
    """
    edge = edge_constants()
    if not 0.0 < a <= edge.a0:
        raise SnrRangeError(f"lower bound on x1 holds only for 0 < a <= a0 = {edge.a0!r}, got {a!r}")
    y_sq = 1.0 + math.log(1.0 / a)
    log_term = -math.log(-phi_u(y_sq))
    if reading == "sqrt":
        arg = phi_u(y_sq / log_term)
    elif reading == "literal":
        arg = phi_u(y_sq / log_term ** 2)
    elif reading == "quotient":
        arg = phi_u(y_sq) / log_term
    else:
        raise ValueError(f"unknown reading {reading!r}; choose from {LOWER_BOUND_READINGS}")
    return math.sqrt(y_sq / -lambert_w(LambertBranch.LOWER, arg))


def effective_lower_bound(a):
    """max(x0, x1_lower_bound(a)); x0 alone where the Lambert form is undefined.

    Near a0 the inner argument of the lower bound drops below x0 and phi leaves
    the Lambert domain; above a0 the bound is not defined at all.  x0 is a
    valid floor for every a.
    """
    edge = edge_constants()
    if a > edge.a0:
        return edge.x0
    try:
        return max(edge.x0, x1_lower_bound(a))
    except DomainError:
        return edge.x0


def capacity_bounds(a, edge=None):
    """(c_lb, c_ub): the capacity expression at the upper and lower x1 bounds.

    c_ub is evaluated at max(x0 (1 + 1e-12), x1_lb) to stay inside the
    expression's domain.
    """
    edge = edge or edge_constants()
    x_ub = x1_upper_bound(a, edge)
    x_lb = max(edge.x0 * (1.0 + 1e-12), effective_lower_bound(a))
    return closed_form.capacity_at(a, x_ub), closed_form.capacity_at(a, x_lb)
