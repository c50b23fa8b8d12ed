import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sftmat.corpus import named, random_corpus  # noqa: E402


@pytest.fixture(scope="session")
def hardsquare():
    return named("hardsquare")


@pytest.fixture(scope="session")
def checkerboard():
    return named("checkerboard")


@pytest.fixture(scope="session")
def contradiction():
    return named("contradiction")


@pytest.fixture(scope="session")
def nocells():
    return named("nocells")


@pytest.fixture(scope="session")
def fullshift():
    return named("fullshift")


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance():
    """Collects one ``(number, passed, detail)`` line per acceptance criterion."""
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
