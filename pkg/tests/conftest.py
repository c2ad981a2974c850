import pytest

from idealshi import build


@pytest.fixture(scope="session")
def systems():
    """Root systems used across the suite, built once."""
    return {name: build(name) for name in ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "D3", "A4", "B4", "C4", "D4", "F4"]}


@pytest.fixture(scope="session")
def rank2(systems):
    return [systems[n] for n in ("A2", "B2", "G2")]
