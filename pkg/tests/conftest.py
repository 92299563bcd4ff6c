"""Shared fixtures and the acceptance-criteria terminal summary."""

import pytest

from metsymp.catalog import catalog_load
from metsymp.symplectization import build_metric_symplectization


def pytest_terminal_summary(terminalreporter):
    """Echo the one-line-per-criterion acceptance results after the run."""
    import sys

    lines = []
    for name, module in sys.modules.items():
        if name.rsplit(".", 1)[-1] == "test_acceptance":
            lines = getattr(module, "CRITERION_LINES", [])
            break
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def sasakian_entry():
    return catalog_load("darboux-sasakian-r3")


@pytest.fixture(scope="session")
def flat_bundle_entry():
    return catalog_load("unit-tangent-flat-plane")


@pytest.fixture(scope="session")
def sasakian(sasakian_entry):
    return sasakian_entry.structure


@pytest.fixture(scope="session")
def flat_bundle(flat_bundle_entry):
    return flat_bundle_entry.structure


@pytest.fixture(scope="session")
def sasakian_symp(sasakian):
    return build_metric_symplectization(sasakian)


@pytest.fixture(scope="session")
def flat_bundle_symp(flat_bundle):
    return build_metric_symplectization(flat_bundle)


@pytest.fixture(scope="session", params=["darboux-sasakian-r3", "unit-tangent-flat-plane"])
def any_entry(request):
    return catalog_load(request.param)
