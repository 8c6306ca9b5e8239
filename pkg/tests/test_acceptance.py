"""Exit criteria of the build, each at its stated tolerance.

Every test records one PASS/FAIL line (shown in the terminal summary and on
stdout with ``-s``) listing the sub-checks and the worst values seen.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from lowsnr_cap import cli, closed_form, optimizer, oracle, report

pytestmark = pytest.mark.acceptance

# Edge constants rounded to 6 and 3 significant digits.
X0_SQ_REF = 3.93388
A0_REF = 0.0582


def conclude(log, number, title, checks):
    """checks: list of (label, passed, detail)."""
    ok = all(passed for _, passed, _ in checks)
    parts = "; ".join(f"{label} {'ok' if passed else 'FAILED'} ({detail})"
                      for label, passed, detail in checks)
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {parts}"
    log.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def fig1_sweep():
    return report.sweep(1e-4, optimizer.SNR_CEILING, 60, "log")


@pytest.fixture(scope="module")
def wide_sweep():
    return report.sweep(1e-6, optimizer.SNR_CEILING, 50, "log")


def test_criterion_01_edge_constants(acceptance_log):
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "lowsnr_cap", "constants"],
                          capture_output=True, text=True, check=False)
    elapsed = time.perf_counter() - start
    kv = dict(line.split("=", 1) for line in proc.stdout.strip().splitlines())
    x0_sq, a0 = float(kv["x0_sq"]), float(kv["a0"])
    conclude(acceptance_log, 1, "edge constants", [
        ("exit", proc.returncode == 0, f"code {proc.returncode}"),
        ("x0_sq", abs(x0_sq - X0_SQ_REF) <= 1e-3, f"{x0_sq:.9f}"),
        ("a0", abs(a0 - A0_REF) <= 5e-4, f"{a0:.9f}"),
        ("runtime", elapsed < 1.0, f"{elapsed:.2f} s"),
    ])


def test_criterion_02_closed_form_vs_oracle(acceptance_log):
    start = time.perf_counter()
    grid = [(a, x1) for a in (1e-5, 1e-4, 1e-3, 1e-2, 0.05)
            for x1 in (1.05 * math.sqrt(a), 2.0, 3.0, 5.0, 10.0, 20.0) if x1 > math.sqrt(a)]
    worst = max(abs(closed_form.mi_closed_form(x1, a) - oracle.on_off_mutual_information(a, x1))
                for a, x1 in grid)
    elapsed = time.perf_counter() - start
    conclude(acceptance_log, 2, "closed-form MI vs quadrature", [
        ("grid size", len(grid) == 30, f"{len(grid)} points"),
        ("max gap", worst <= 1e-6, f"{worst:.2e} nats"),
        ("runtime", elapsed < 60.0, f"{elapsed:.2f} s"),
    ])


def test_criterion_03_optimizer_vs_oracle_argmax(acceptance_log):
    edge = optimizer.edge_constants()
    checks = []
    for a in (1e-5, 1e-3, 1e-2):
        x_opt = optimizer.solve_x1(a).x1
        hi = 1.1 * optimizer.x1_upper_bound(a, edge)
        grid = np.linspace(max(0.9 * edge.x0, 1.01 * math.sqrt(a)), hi, 2000)
        values = [oracle.on_off_mutual_information(a, float(x)) for x in grid]
        x_grid = float(grid[int(np.argmax(values))])
        rel = abs(x_grid - x_opt) / x_opt
        grad = oracle.mi_gradient_x1(a, x_opt, h=1e-4 * x_opt)
        checks.append((f"argmax a={a:g}", rel <= 1e-3,
                       f"solver {x_opt:.6f} grid {x_grid:.6f} rel {rel:.2e}"))
        checks.append((f"gradient a={a:g}", abs(grad) <= 1e-5, f"{grad:.2e}"))
    conclude(acceptance_log, 3, "optimizer vs oracle", checks)


def test_criterion_04_expansion_accuracy(acceptance_log):
    low = np.geomspace(1e-6, 0.02, 30)
    gaps = np.array([abs(closed_form.capacity_at(a, x) - closed_form.mi_closed_form(x, a)) / a
                     for a, x in ((float(a), optimizer.solve_x1(float(a)).x1) for a in low)])
    bad = low[gaps > 1e-4]
    high = np.geomspace(0.02, optimizer.SNR_CEILING, 20)[1:]
    growth = np.array([abs(closed_form.capacity_at(a, x) - closed_form.mi_closed_form(x, a)) / a
                       for a, x in ((float(a), optimizer.solve_x1(float(a)).x1) for a in high)])
    detail = f"worst {gaps.max():.2e} at a={low[int(np.argmax(gaps))]:.3g}"
    if bad.size:
        detail += f", exceeds 1e-4 for a >= {bad.min():.3g}"
    conclude(acceptance_log, 4, "capacity expansion accuracy", [
        ("gap/a <= 1e-4 on [1e-6, 0.02]", bad.size == 0, detail),
        ("growth on (0.02, 0.1]", bool(np.all(np.diff(growth) > 0)),
         f"{growth[0]:.2e} -> {growth[-1]:.2e}"),
    ])


def test_criterion_05_mass_point_minimum(acceptance_log, fig1_sweep):
    edge = optimizer.edge_constants()
    a = np.array([r.a for r in fig1_sweep])
    x1 = np.array([r.x1_opt for r in fig1_sweep])
    i = int(np.argmin(x1))
    nearest = int(np.argmin(np.abs(a - edge.a0)))
    conclude(acceptance_log, 5, "x1_opt minimum at a0", [
        ("rows", len(fig1_sweep) == 60, f"{len(fig1_sweep)}"),
        ("argmin", i == nearest, f"min at a={a[i]:.5g}, nearest to a0 is {a[nearest]:.5g}"),
        ("min value", abs(x1[i] - math.sqrt(edge.x0_sq)) <= 1e-2, f"{x1[i]:.6f} vs x0 {edge.x0:.6f}"),
    ])


def test_criterion_06_linear_bound_and_efficiency(acceptance_log, fig1_sweep, wide_sweep):
    checks = []
    for name, rows in (("[1e-4,0.1]x60", fig1_sweep), ("[1e-6,0.1]x50", wide_sweep)):
        ratio = np.array([r.capacity_nats / r.a for r in rows])
        checks.append((f"C < a {name}", all(r.capacity_nats < r.a for r in rows),
                       f"max C/a {ratio.max():.4f}"))
        # rows ascend in a, so C/a must fall along them
        checks.append((f"C/a rises as a falls {name}", bool(np.all(np.diff(ratio) < 0)),
                       f"{ratio[-1]:.4f} -> {ratio[0]:.4f}"))
    conclude(acceptance_log, 6, "capacity below linear bound", checks)


def test_criterion_07_penalty(acceptance_log, fig1_sweep, wide_sweep):
    top = report.capacity_record(0.1).penalty_per_snr
    checks = [("penalty at a=0.1", 0.55 <= top <= 0.75, f"{top:.4f}")]
    for name, rows in (("[1e-4,0.1]x60", fig1_sweep), ("[1e-6,0.1]x50", wide_sweep)):
        pen = np.array([r.penalty_per_snr for r in rows])
        checks.append((f"increasing {name}", bool(np.all(np.diff(pen) > 0)),
                       f"{pen[0]:.4f} -> {pen[-1]:.4f}"))
    conclude(acceptance_log, 7, "non-coherence penalty", checks)


def test_criterion_08_bound_ordering(acceptance_log):
    edge = optimizer.edge_constants()
    snrs = list(np.geomspace(1e-6, edge.a0, 40))
    snrs[-1] = edge.a0
    rows = [report.capacity_record(float(a)) for a in snrs]
    slack = 1e-9
    x_viol = [r.a for r in rows if not (r.x1_lb - slack <= r.x1_opt <= r.x1_ub + slack)]
    lb_viol = [r.a for r in rows if not r.c_lb <= r.capacity_nats + slack * r.a]
    ub_viol = [r.a for r in rows if not r.capacity_nats <= r.c_ub + slack * r.a]
    ub_worst = max((r.capacity_nats - r.c_ub) / r.a for r in rows)
    last = rows[-1]
    spread = last.x1_ub - last.x1_lb
    conclude(acceptance_log, 8, "bound ordering on [1e-6, a0]", [
        ("x1_lb <= x1_opt <= x1_ub", not x_viol, f"{len(x_viol)} of {len(rows)} rows violate"),
        ("c_lb <= C", not lb_viol, f"{len(lb_viol)} of {len(rows)} rows violate"),
        ("C <= c_ub", not ub_viol,
         f"{len(ub_viol)} of {len(rows)} rows violate, worst (C - c_ub)/a = {ub_worst:.2e}"),
        ("x1 bounds collapse at a0", spread <= 5e-2, f"x1_ub - x1_lb = {spread:.2e}"),
    ])


def test_criterion_09_asymptotics(acceptance_log):
    snrs = [10.0 ** -k for k in range(2, 9)]
    u = np.array([optimizer.solve_x1(a).u for a in snrs])
    scaled = np.sqrt(snrs) * u
    conclude(acceptance_log, 9, "asymptotics as a -> 0", [
        ("x1^2 increasing", bool(np.all(np.diff(u) > 0)), f"{u[0]:.4f} -> {u[-1]:.4f}"),
        ("sqrt(a) x1^2 decreasing", bool(np.all(np.diff(scaled) < 0)),
         f"{scaled[0]:.3e} -> {scaled[-1]:.3e}"),
    ])


def _verify_exit(capsys):
    optimizer.edge_constants.cache_clear()
    optimizer.solve_x1.cache_clear()
    start = time.perf_counter()
    code = cli.main(["verify", "--level", "full"])
    out, err = capsys.readouterr()
    return code, time.perf_counter() - start, out + err


def test_criterion_10_verify_and_mutation(acceptance_log, capsys, monkeypatch):
    code, elapsed, _ = _verify_exit(capsys)
    with monkeypatch.context() as m:
        m.setattr(closed_form, "capacity_at", _perturbed_capacity_at)
        mutated, _, text = _verify_exit(capsys)
    named = "capacity expansion vs exact MI" in text
    conclude(acceptance_log, 10, "verify --level full", [
        ("clean build exits 0", code == 0, f"exit {code}"),
        ("runtime", elapsed < 300.0, f"{elapsed:.2f} s"),
        ("mutation exits 1", mutated == 1, f"exit {mutated}"),
        ("mutation names the expansion check", named, "named" if named else "not named"),
    ])


def _perturbed_capacity_at(a, x1):
    closed_form._check_expansion_domain(a, x1)
    u = x1 * x1
    return a - a * math.log1p(u) / u - 1.01 * closed_form._csc_term(a, u, 1.0 + 1.0 / u)
