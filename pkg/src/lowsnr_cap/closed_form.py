"""Closed-form information quantities for on-off signalling at low SNR.

All values are in nats.  ``u`` below always denotes ``x1**2``.
"""

import math
from dataclasses import dataclass

from .channel import BOUNDARY_RTOL
from .errors import DomainError
from .specfun import hyp2f1_1b


def mi_closed_form(x1, a):
    """Mutual information of the on-off input (x1, p1 = a/x1^2), exact at any SNR.

    I = a - a [ln(1+u)/u + 1/(1+u) + u/(1+u) 2F1(1, 1/u; 1+1/u; -(1+u)(u-a)/a)]
        - ln(1 - a/u) - ln(1 + a/((1+u)(u-a)))

    The last two logarithms are merged into -ln(1 - a/(1+u)), which is the
    same quantity without the blow-up of each term as x1 -> sqrt(a).
    """
    u = x1 * x1
    if not a > 0.0:
        raise DomainError(f"SNR must be positive, got {a!r}")
    if u < a * (1.0 - BOUNDARY_RTOL):
        raise DomainError(f"x1 = {x1!r} is below sqrt(a) = {math.sqrt(a)!r}")
    if u <= a * (1.0 + BOUNDARY_RTOL):
        return 0.0
    w = (1.0 + u) * (u - a) / a
    hyp = hyp2f1_1b(1.0 / u, w)
    value = (a
             - a * math.log1p(u) / u
             - a / (1.0 + u)
             - a * u / (1.0 + u) * hyp
             - math.log1p(-a / (1.0 + u)))
    return max(value, 0.0)


def _check_expansion_domain(a, x1):
    if not a > 0.0:
        raise DomainError(f"SNR must be positive, got {a!r}")
    if not x1 * x1 > 1.0:
        raise DomainError(f"x1^2 must exceed 1 (cosecant pole), got x1 = {x1!r}")


def _csc_term(a, u, snr_power):
    """a^snr_power * pi csc(pi/u) (1/(u+u^2))^(1/u) / (1+u), built in log space."""
    log_value = (snr_power * math.log(a)
                 + math.log(math.pi)
                 - math.log(math.sin(math.pi / u))
                 - math.log(u + u * u) / u
                 - math.log1p(u))
    return math.exp(log_value)


def sublinear_delta(a, x1):
    """Delta(a) = a - C(a): a ln(1+u)/u + a^(1+1/u) pi csc(pi/u) (u+u^2)^(-1/u) / (1+u)."""
    _check_expansion_domain(a, x1)
    u = x1 * x1
    return a * math.log1p(u) / u + _csc_term(a, u, 1.0 + 1.0 / u)


def capacity_at(a, x1):
    """Low-SNR capacity expression evaluated at mass point x1 (nats).

    Maximised over x1 exactly at the root found by ``optimizer.solve_x1``.
    """
    _check_expansion_domain(a, x1)
    u = x1 * x1
    return a - a * math.log1p(u) / u - _csc_term(a, u, 1.0 + 1.0 / u)


def penalty_per_snr(a, x1):
    """Non-coherence penalty (C_coherent - C)/a with C_coherent ~ a; equals Delta/a."""
    _check_expansion_domain(a, x1)
    u = x1 * x1
    return math.log1p(u) / u + _csc_term(a, u, 1.0 / u)


def delta_awgn(a):
    """Leading sub-linear term of the AWGN channel, a^2 / 2."""
    return 0.5 * a * a


def delta_coherent(a, fourth_moment=2.0):
    """Leading sub-linear term with receiver CSI, E|h|^4 a^2 / 2 (2 for unit Rayleigh)."""
    if fourth_moment < 1.0:
        raise DomainError(f"E|h|^4 >= (E|h|^2)^2 = 1, got {fourth_moment!r}")
    return 0.5 * fourth_moment * a * a


@dataclass(frozen=True)
class PenaltyBreakdown:
    delta: float
    delta_awgn: float
    delta_coherent: float
    penalty_per_snr: float


def penalty_breakdown(a, x1, fourth_moment=2.0):
    return PenaltyBreakdown(
        delta=sublinear_delta(a, x1),
        delta_awgn=delta_awgn(a),
        delta_coherent=delta_coherent(a, fourth_moment),
        penalty_per_snr=penalty_per_snr(a, x1),
    )


@dataclass(frozen=True)
class EnergyPerNat:
    exact: float
    approx: float
    per_bit_db: float


def energy_per_nat(a, x1):
    """Normalised transmit energy per nat E_n / sigma_w^2 = a / C.

    Returns the exact value 1/(1 - Delta/a), the first-order 1 + Delta/a, and
    the per-bit figure 10 log10(exact * ln 2) in dB (-1.59 dB as Delta/a -> 0).
    """
    ratio = penalty_per_snr(a, x1)
    if ratio >= 1.0:
        raise DomainError(f"Delta(a)/a = {ratio!r} >= 1: capacity expression is non-positive")
    exact = 1.0 / (1.0 - ratio)
    return EnergyPerNat(exact=exact, approx=1.0 + ratio,
                        per_bit_db=10.0 * math.log10(exact * math.log(2.0)))
