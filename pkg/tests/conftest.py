"""Shared fixtures for the avhorizon test suite."""

import pytest

from avhorizon import PROJECTABLE_STAGES, builtin_catalog, project


@pytest.fixture(scope="session")
def catalog():
    """The builtin categories keyed by name."""
    return {s.name: s for s in builtin_catalog()}


@pytest.fixture(scope="session")
def catalog_results():
    """Every (category, stage) projection, in catalog order."""
    return [
        project(scenario, stage)
        for scenario in builtin_catalog()
        for stage in PROJECTABLE_STAGES
    ]
