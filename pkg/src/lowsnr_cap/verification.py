"""Property checks cross-validating the closed forms against the quadrature oracle.

Library functions are looked up through their modules at call time so a test
can patch one (e.g. a perturbed capacity coefficient) and watch the checks fail.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import channel, closed_form, oracle, optimizer
from .quadrature import QuadratureSpec, integrate
from .specfun import LambertBranch


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str = ""


def _grid(level, quick, full):
    return quick if level == "quick" else full


def check_density_normalisation(level):
    worst = 0.0
    for x in (0.0, 1.0, 5.0, 50.0):
        s = 1.0 + x * x
        total, _ = integrate(lambda y: channel.conditional_density(y, x), [0.0, s, 10 * s, 60 * s])
        worst = max(worst, abs(total - 1.0))
    return CheckResult("channel density integrates to one", worst <= 1e-9, worst)


def check_oracle_closed_form(level):
    snrs = _grid(level, (1e-5, 1e-2), (1e-5, 1e-4, 1e-3, 1e-2, 0.05))
    worst, where = 0.0, None
    for a in snrs:
        for x1 in (1.05 * math.sqrt(a), 2.0, 3.0, 5.0, 10.0, 20.0):
            gap = abs(oracle.on_off_mutual_information(a, x1) - closed_form.mi_closed_form(x1, a))
            if gap >= worst:
                worst, where = gap, (a, x1)
    return CheckResult("exact on-off MI closed form vs quadrature oracle",
                       worst <= 1e-6, worst, f"worst at (a, x1) = {where}")


def check_oracle_nonnegative_permutation(level):
    rng = np.random.default_rng(20080103)
    trials = _grid(level, 5, 25)
    worst_neg, worst_perm = 0.0, 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 5))
        xs = np.sort(rng.uniform(0.0, 8.0, n))
        xs[0] = 0.0
        ps = rng.dirichlet(np.ones(n))
        points = list(zip(xs, ps))
        base = oracle.mutual_information(channel.DiscreteInput(points))
        shuffled = oracle.mutual_information(channel.DiscreteInput(points[::-1]))
        worst_neg = max(worst_neg, -base)
        worst_perm = max(worst_perm, abs(base - shuffled))
    worst = max(worst_neg - QuadratureSpec().abs_tol, worst_perm)
    return CheckResult("oracle MI non-negative and order independent",
                       worst_neg <= QuadratureSpec().abs_tol and worst_perm == 0.0, worst)


# The expansion error of the capacity formula grows roughly like a^2; 1e-4*a
# holds up to a ~ 5e-3 and is checked on [1e-6, 1e-3].  Above that only the
# growth of the discrepancy is checked.
EXPANSION_AGREEMENT_RANGE = (1e-6, 1e-3)


def _expansion_gap(a):
    x1 = optimizer.solve_x1(a).x1
    return abs(closed_form.capacity_at(a, x1) - closed_form.mi_closed_form(x1, a)) / a


def check_expansion_agreement(level):
    snrs = np.geomspace(*EXPANSION_AGREEMENT_RANGE, _grid(level, 4, 13))
    gaps = [_expansion_gap(float(a)) for a in snrs]
    worst = max(gaps)
    return CheckResult("capacity expansion vs exact MI at the optimum (<= 1e-4 a)",
                       worst <= 1e-4, worst, f"worst at a = {snrs[int(np.argmax(gaps))]:.3g}")


def check_expansion_discrepancy_growth(level):
    snrs = np.geomspace(1e-3, optimizer.SNR_CEILING, _grid(level, 6, 25))
    gaps = np.array([_expansion_gap(float(a)) for a in snrs])
    steps = np.diff(gaps)
    return CheckResult("capacity expansion discrepancy grows with a",
                       bool(np.all(steps > 0)), float(max(0.0, -steps.min())))


def check_identity_chain(level):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(_grid(level, 20, 200)):
        a = float(10 ** rng.uniform(-6, -1))
        x1 = float(rng.uniform(1.2, 6.0))
        cap = closed_form.capacity_at(a, x1)
        delta = closed_form.sublinear_delta(a, x1)
        pen = closed_form.penalty_per_snr(a, x1)
        worst = max(worst, abs(a - cap - delta) / a, abs(pen * a - delta) / a)
    return CheckResult("a = C + Delta = a(1 - penalty) + a penalty", worst <= 1e-12, worst)


def check_positivity(level):
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(_grid(level, 20, 200)):
        a = float(10 ** rng.uniform(-6, -1))
        x1 = math.sqrt(a) * float(10 ** rng.uniform(0.0, 3.0))
        worst = max(worst, -closed_form.mi_closed_form(x1, a))
        if x1 > 1.05:
            worst = max(worst, -closed_form.sublinear_delta(a, x1))
    return CheckResult("closed-form MI and Delta non-negative", worst <= 0.0, worst)


def check_stationarity(level):
    worst, where = 0.0, None
    for a in _grid(level, (1e-3,), (1e-5, 1e-3, 1e-2)):
        x1 = optimizer.solve_x1(a).x1
        g = abs(oracle.mi_gradient_x1(a, x1, h=1e-4 * x1))
        if g >= worst:
            worst, where = g, a
    return CheckResult("oracle MI stationary at the solved mass point", worst <= 1e-5, worst,
                       f"worst at a = {where}")


def check_edge_constants(level):
    edge = optimizer.edge_constants()
    phi_gap = abs(optimizer.phi(edge.x0) + math.exp(-1.0))
    branch_gap = max(abs(optimizer.snr_from_x1(edge.x0, b) / edge.a0 - 1.0) for b in LambertBranch)
    worst = max(phi_gap, branch_gap)
    return CheckResult("edge point: phi(x0) = -1/e and both branches give a0", worst <= 1e-9, worst)


def check_branch_monotonicity(level):
    edge = optimizer.edge_constants()
    us = np.linspace(edge.x0_sq + 1e-6, 60.0, _grid(level, 50, 200))
    lower = np.array([optimizer.snr_from_u(float(u), LambertBranch.LOWER) for u in us])
    upper = np.array([optimizer.snr_from_u(float(u), LambertBranch.PRINCIPAL) for u in us])
    ok = bool(np.all(np.diff(lower) < 0) and np.all(np.diff(upper) > 0))
    edge_gap = max(abs(lower[0] / edge.a0 - 1.0), abs(upper[0] / edge.a0 - 1.0))
    ok = ok and edge_gap < 1e-2
    return CheckResult("SNR falls along the lower branch and rises along the principal",
                       ok, edge_gap)


def check_floor_and_divergence(level):
    edge = optimizer.edge_constants()
    snrs = [10.0 ** -k for k in range(2, 9)]
    us = np.array([optimizer.solve_x1(a).u for a in snrs])
    scaled = np.sqrt(snrs) * us
    floor_gap = float(np.max(edge.x0_sq - us))
    ok = floor_gap <= 1e-9 and np.all(np.diff(us) > 0) and np.all(np.diff(scaled) < 0)
    return CheckResult("x1 above x0, diverging as a -> 0 slower than a^-1/2",
                       bool(ok), max(floor_gap, 0.0))


def check_u_shape(level):
    edge = optimizer.edge_constants()
    snrs = np.geomspace(1e-4, optimizer.SNR_CEILING, _grid(level, 30, 120))
    x1s = np.array([optimizer.solve_x1(float(a)).x1 for a in snrs])
    i = int(np.argmin(x1s))
    nearest = int(np.argmin(np.abs(np.log(snrs / edge.a0))))
    gap = abs(x1s[i] - edge.x0)
    return CheckResult("x1(a) attains its minimum x0 at a0",
                       abs(i - nearest) <= 1 and gap <= 1e-2, gap,
                       f"minimum at a = {snrs[i]:.4g}")


def check_lambert_equivalence(level):
    edge = optimizer.edge_constants()
    rng = np.random.default_rng(3)
    us = rng.uniform(edge.x0_sq, 40.0, _grid(level, 10, 50))
    worst = 0.0
    for u in us:
        for branch in LambertBranch:
            a = optimizer.snr_from_u(float(u), branch)
            worst = max(worst, abs(optimizer.eq11_residual_u(float(u), a)))
    return CheckResult("Lambert-W form solves the stationarity condition", worst <= 1e-8, worst)


def check_bound_ordering(level):
    edge = optimizer.edge_constants()
    snrs = list(np.geomspace(1e-6, edge.a0, _grid(level, 8, 40)))
    snrs[-1] = edge.a0
    worst = 0.0
    for a in snrs:
        a = float(a)
        x1 = optimizer.solve_x1(a).x1
        cap = closed_form.capacity_at(a, x1)
        lb = optimizer.effective_lower_bound(a)
        ub = optimizer.x1_upper_bound(a, edge)
        c_lb, c_ub = optimizer.capacity_bounds(a, edge)
        worst = max(worst, lb - x1, x1 - ub, (c_lb - cap) / a, (c_ub - a) / a)
    return CheckResult("x1_lb <= x1 <= x1_ub, c_lb <= C, c_ub <= a", worst <= 1e-9, max(worst, 0.0))


CHECKS = (
    check_density_normalisation,
    check_oracle_closed_form,
    check_oracle_nonnegative_permutation,
    check_expansion_agreement,
    check_expansion_discrepancy_growth,
    check_identity_chain,
    check_positivity,
    check_stationarity,
    check_edge_constants,
    check_branch_monotonicity,
    check_floor_and_divergence,
    check_u_shape,
    check_lambert_equivalence,
    check_bound_ordering,
)


def run_checks(level="quick"):
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    results = []
    for check in CHECKS:
        try:
            results.append(check(level))
        except Exception as exc:  # a crash is a failed property, reported by name
            results.append(CheckResult(check.__name__, False, math.nan, f"{type(exc).__name__}: {exc}"))
    return results


def format_table(results):
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.name:<{width}}  worst={r.worst:.3e}"
        if r.detail:
            line += f"  ({r.detail})"
        lines.append(line)
    return "\n".join(lines)
