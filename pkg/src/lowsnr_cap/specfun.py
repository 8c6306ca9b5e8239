"""Real Lambert W branches and the hypergeometric family 2F1(1, b; 1+b; -w).

Only what the low-SNR capacity formulas need: the two real branches of W and
one parameter family of the Gauss hypergeometric function, evaluated without
general-purpose special-function machinery.
"""

import enum
import math

import numpy as np

from .errors import ConvergenceError, DomainError
from .quadrature import QuadratureSpec, integrate

_INV_E = math.exp(-1.0)
# Arguments this close to the branch point are returned as W = -1 exactly;
# the residual |w e^w - z| is then below this width, well inside the
# guaranteed 1e-12.
_BRANCH_POINT_SNAP = 1e-14
_RESIDUAL_TOL = 1e-12
_MAX_HALLEY = 100


class LambertBranch(enum.IntEnum):
    PRINCIPAL = 0
    LOWER = -1


def _initial_guess(branch, z):
    if z < -0.25:
        p = math.sqrt(max(2.0 * (math.e * z + 1.0), 0.0))
        if branch is LambertBranch.PRINCIPAL:
            return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
        return -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p ** 3
    if branch is LambertBranch.LOWER:
        l1 = math.log(-z)
        l2 = math.log(-l1)
        return l1 - l2 + l2 / l1
    if z <= 3.0:
        return math.log1p(z)
    l1 = math.log(z)
    l2 = math.log(l1)
    return l1 - l2 + l2 / l1


def lambert_w(branch, z):
    """Real Lambert W on the principal (k=0) or lower (k=-1) branch.

    Halley iteration from branch-specific seeds: the branch-point series in
    ``p = sqrt(2(ez + 1))`` near ``-1/e``, and the asymptotic
    ``ln|z| - ln|ln|z||`` expansion elsewhere.

    Raises:
        DomainError: ``z < -1/e``, or ``z >= 0`` on the lower branch.
        ConvergenceError: the residual ``|w e^w - z|`` exceeds
            ``1e-12 * max(1, |z|)`` after iteration.
    """
    branch = LambertBranch(branch)
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"Lambert W argument must be finite, got {z}")
    if abs(z + _INV_E) <= _BRANCH_POINT_SNAP:
        return -1.0
    if z < -_INV_E:
        raise DomainError(f"Lambert W undefined for z = {z!r} < -1/e")
    if branch is LambertBranch.LOWER and z >= 0.0:
        raise DomainError(f"lower Lambert branch requires -1/e <= z < 0, got {z!r}")
    if z == 0.0:
        return 0.0

    scale = max(1.0, abs(z))
    w = _initial_guess(branch, z)
    for _ in range(_MAX_HALLEY):
        ew = math.exp(w)
        f = w * ew - z
        if abs(f) <= 8.0 * math.ulp(abs(z)):
            break
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        step = f / denom
        w -= step
        if abs(step) <= 1e-15 * (1.0 + abs(w)):
            break

    if branch is LambertBranch.PRINCIPAL and w < -1.0:
        w = -1.0
    elif branch is LambertBranch.LOWER and w > -1.0:
        w = -1.0
    residual = abs(w * math.exp(w) - z)
    if residual > _RESIDUAL_TOL * scale:
        raise ConvergenceError(f"Lambert W({int(branch)}, {z!r}) residual {residual:.3e}")
    return w


_SERIES_MAX_TERMS = 100_000
_LARGE_W = 8.0
_LARGE_B = 8.0


def _check_hyp_args(b, w):
    if not (b > 0.0 and math.isfinite(b)):
        raise DomainError(f"2F1(1, b; 1+b; -w) needs b > 0, got b = {b!r}")
    if not (w >= 0.0 and math.isfinite(w)):
        raise DomainError(f"2F1(1, b; 1+b; -w) needs finite w >= 0, got w = {w!r}")


def _pfaff_series(b, w):
    """sum_n n!/(1+b)_n z^n / (1+w) with z = w/(1+w); None if it stalls."""
    z = w / (1.0 + w)
    term = 1.0
    total = 1.0
    for n in range(_SERIES_MAX_TERMS):
        term *= z * (n + 1.0) / (n + 1.0 + b)
        total += term
        if term <= 1e-17 * total:
            return total / (1.0 + w)
    return None


def _pole_pair(eps, log_w):
    """(g(eps) w^eps - 1)/eps with g(eps) = pi eps / sin(pi eps), stable as eps -> 0."""
    if abs(eps) < 0.05:
        x = (math.pi * eps) ** 2
        g_minus_1_over_eps = math.pi ** 2 * eps * (
            1.0 / 6.0 + x * (7.0 / 360.0 + x * (31.0 / 15120.0 + x * 127.0 / 604800.0)))
    else:
        g_minus_1_over_eps = (math.pi * eps / math.sin(math.pi * eps) - 1.0) / eps
    expm1_term = log_w if eps == 0.0 else math.expm1(eps * log_w) / eps
    return g_minus_1_over_eps * math.exp(eps * log_w) + expm1_term


def _large_w_expansion(b, w):
    """Expansion in 1/w of b * int_0^1 t^(b-1) / (1 + w t) dt, valid for w > 1.

    F = Gamma(1+b) Gamma(1-b) w^-b - b * sum_n (-1)^n w^-(n+1) / (n+1-b).
    Near an integer m the Gamma term and the n = m-1 term share a pole; they
    are combined into (-1)^(m+1) b w^-m (g w^eps - 1)/eps with eps = m - b.
    """
    log_w = math.log(w)
    m = round(b)
    paired = m >= 1 and abs(m - b) < 0.25
    if paired:
        eps = m - b
        head = (-1.0) ** (m + 1) * b * math.exp(-m * log_w) * _pole_pair(eps, log_w)
    else:
        head = math.pi * b / math.sin(math.pi * b) * math.exp(-b * log_w)

    total = 0.0
    inv_w = 1.0 / w
    power = inv_w
    n = 0
    while True:
        if not (paired and n == m - 1):
            term = (-1.0) ** n * power / (n + 1.0 - b)
            total += term
            if n + 1.0 > b + 1.0 and abs(term) <= 1e-17 * abs(total):
                break
        n += 1
        power *= inv_w
        if n > 1000:
            raise ConvergenceError(f"large-w expansion stalled at b={b!r}, w={w!r}")
    return head - b * total


def hyp2f1_1b(b, w):
    """Gauss hypergeometric 2F1(1, b; 1+b; -w) for b > 0 and w >= 0.

    Small w (or large b, where the terms decay factorially) goes through the
    Pfaff transformation to argument w/(1+w) and the Gauss series; large w uses
    the convergent expansion in 1/w.  If the series fails to converge within
    1e5 terms the Euler integral is used instead.
    """
    b = float(b)
    w = float(w)
    _check_hyp_args(b, w)
    if w == 0.0:
        return 1.0
    if b == 1.0:
        return math.log1p(w) / w
    if w <= _LARGE_W or b >= _LARGE_B:
        value = _pfaff_series(b, w)
        if value is not None:
            return value
        return hyp2f1_1b_integral(b, w)
    return _large_w_expansion(b, w)


def hyp2f1_1b_integral(b, w, spec=QuadratureSpec(abs_tol=1e-15, rel_tol=1e-13, max_subdivisions=4000)):
    """2F1(1, b; 1+b; -w) from its Euler integral, by adaptive quadrature.

    For b <= 1 the substitution t = s^(1/b) turns b * int t^(b-1)/(1+wt) dt
    into the bounded integrand 1/(1 + w s^(1/b)); for b > 1 the original form
    is already smooth.  Breakpoints cluster around the transition at w t ~ 1.
    """
    b = float(b)
    w = float(w)
    _check_hyp_args(b, w)
    if w == 0.0:
        return 1.0
    # Breakpoints where w * t crosses powers of ten and where t^(b-1) (or
    # s^(1/b)) turns on near the upper end.
    decades = np.arange(-20, 21, dtype=float)
    if b <= 1.0:
        inv_b = 1.0 / b

        def f(s):
            return 1.0 / (1.0 + w * s ** inv_b)

        points = np.concatenate([(10.0 ** decades / w) ** b, 10.0 ** (-b * decades[20:])])
    else:
        def f(t):
            return b * t ** (b - 1.0) / (1.0 + w * t)

        points = np.concatenate([10.0 ** decades / w, 10.0 ** (-decades[20:] / (b - 1.0))])
    points = points[(points > 0.0) & (points < 1.0)]
    value, _ = integrate(f, np.concatenate([[0.0, 1.0], points]), spec)
    return value
