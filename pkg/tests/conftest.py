import pathlib
import sys

import pytest

from infranil import load_input

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))


def load(name):
    return load_input(DATA / f"{name}.json")


@pytest.fixture
def klein3():
    return load("klein3")


@pytest.fixture
def klein1():
    return load("klein1")


@pytest.fixture
def z3():
    return load("z3")


@pytest.fixture
def z6():
    return load("z6")


@pytest.fixture
def torus2():
    return load("torus2")


@pytest.fixture
def torus_identity():
    return load("torus_identity")


@pytest.fixture
def singular():
    return load("klein_circle_singular")


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
