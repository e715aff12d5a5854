import cmath
import random

import pytest

from nrvolkov.model import DimensionlessParams, SpacetimePoint

REFERENCE_KAPPA = (0.3, 0.2, 0.4)

_acceptance_lines = []


@pytest.fixture
def reference_params():
    return DimensionlessParams(0.05, 5.0, REFERENCE_KAPPA)


@pytest.fixture
def reference_point():
    return SpacetimePoint(0.1, 0.2, 0.3, 0.4)


def random_disk(rng: random.Random, radius: float) -> complex:
    return cmath.rect(radius * rng.random() ** 0.5, rng.uniform(-cmath.pi, cmath.pi))


def rel_err(got, want):
    return abs(got - want) / abs(want)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and report.when == "call":
        status = "PASS" if report.passed else "FAIL"
        _acceptance_lines.append(f"[{status}] criterion {marker.args[0]}: {marker.args[1]}")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
