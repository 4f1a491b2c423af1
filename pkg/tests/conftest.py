import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import fixtures  # noqa: E402


@pytest.fixture
def asym3():
    return fixtures.asym3()


@pytest.fixture
def comp2():
    return fixtures.comp2()


@pytest.fixture
def mix3():
    return fixtures.mix3()


@pytest.fixture
def sym4():
    return fixtures.sym4()


@pytest.fixture
def lopsided2():
    return fixtures.lopsided2()
