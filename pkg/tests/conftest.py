from pathlib import Path

import pytest

from bikeigebra.blockmatrix import read_matrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture(scope="session")
def matrix():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = read_matrix(FIXTURES / f"{name}.tvb")
        return cache[name]

    return get
