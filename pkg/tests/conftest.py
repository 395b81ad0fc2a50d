from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from biframe import builtin_theories, minimal_data

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def theories():
    return builtin_theories()


@pytest.fixture(scope="session")
def semion(theories):
    return theories["semion"]


@pytest.fixture(scope="session")
def toric(theories):
    return theories["toric_code"]


@pytest.fixture(scope="session")
def minimal_datas(theories):
    # Shared across tests so pairing matrices are computed once.
    return {name: minimal_data(t) for name, t in theories.items()}


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
