"""Normalised non-coherent Rayleigh channel law and discrete input distributions.

Everything lives in the normalised domain: output ``y = |r|^2 / sigma_w^2`` and
input amplitude ``x = |s| sigma_h / sigma_w``.  Given x, y is exponential with
mean ``1 + x^2``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError

# Relative slack within which a / x1^2 counts as exactly 1.
BOUNDARY_RTOL = 4.0 * np.finfo(float).eps


def conditional_density(y, x):
    """f(y | x) = exp(-y / (1 + x^2)) / (1 + x^2)."""
    s = 1.0 + np.square(x)
    return np.exp(-np.asarray(y) / s) / s


def log_conditional_density(y, x):
    """log f(y | x), formed without exponentiating so it stays finite for large y."""
    s = 1.0 + np.square(x)
    return -np.asarray(y) / s - np.log(s)


@dataclass(frozen=True)
class OnOffInput:
    """Two-point input: amplitude 0 w.p. ``1 - p1`` and ``x1`` w.p. ``p1``."""

    x1: float
    p1: float

    def __post_init__(self):
        if not self.x1 >= 0.0:
            raise ValueError(f"x1 must be non-negative, got {self.x1!r}")
        if not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 must lie in [0, 1], got {self.p1!r}")

    @property
    def p0(self):
        return 1.0 - self.p1

    def to_discrete(self):
        """Drop zero-probability points; x1 = 0 or p1 in {0, 1} collapses to one point."""
        if self.p1 == 0.0 or self.x1 == 0.0:
            return DiscreteInput([(0.0, 1.0)])
        if self.p1 == 1.0:
            return DiscreteInput([(self.x1, 1.0)])
        return DiscreteInput([(0.0, self.p0), (self.x1, self.p1)])


@dataclass(frozen=True, init=False)
class DiscreteInput:
    """Finite input distribution; points are stored sorted by amplitude."""

    locations: tuple
    probabilities: tuple

    def __init__(self, points):
        pts = sorted((float(x), float(p)) for x, p in points)
        if not pts:
            raise ValueError("a discrete input needs at least one mass point")
        xs = [x for x, _ in pts]
        ps = [p for _, p in pts]
        if any(x < 0.0 or not math.isfinite(x) for x in xs):
            raise ValueError("mass point locations must be finite and non-negative")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("mass point locations must be distinct")
        if any(not 0.0 < p <= 1.0 for p in ps):
            raise ValueError("probabilities must lie in (0, 1]")
        if abs(math.fsum(ps) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {math.fsum(ps)!r}, not 1")
        object.__setattr__(self, "locations", tuple(xs))
        object.__setattr__(self, "probabilities", tuple(ps))

    @property
    def points(self):
        return list(zip(self.locations, self.probabilities))

    def __len__(self):
        return len(self.locations)

    def power(self):
        """E[x^2]."""
        return math.fsum(p * x * x for x, p in self.points)


def on_off_from_snr(a, x1):
    """On-off input meeting the power constraint with equality: p1 = a / x1^2."""
    if not a > 0.0:
        raise ValueError(f"SNR must be positive, got {a!r}")
    ratio = a / (x1 * x1) if x1 > 0.0 else math.inf
    if ratio > 1.0 + BOUNDARY_RTOL:
        raise ConstraintError(f"x1 = {x1!r} < sqrt(a) = {math.sqrt(a)!r} would need p1 > 1")
    # x1 = sqrt(a) rarely squares back to a exactly; snap to the boundary
    return OnOffInput(x1=float(x1), p1=1.0 if ratio >= 1.0 - BOUNDARY_RTOL else ratio)
