import math

import pytest

from lowsnr_cap import closed_form

# Lines collected by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture
def perturbed_capacity(monkeypatch):
    """Capacity expression with its cosecant coefficient scaled by 1.01."""

    def capacity_at(a, x1):
        closed_form._check_expansion_domain(a, x1)
        u = x1 * x1
        return a - a * math.log1p(u) / u - 1.01 * closed_form._csc_term(a, u, 1.0 + 1.0 / u)

    monkeypatch.setattr(closed_form, "capacity_at", capacity_at)
    return capacity_at
