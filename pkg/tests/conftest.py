import pytest

import helpers


@pytest.fixture
def HS():
    return helpers.square()


@pytest.fixture
def HL():
    return helpers.laurent()


@pytest.fixture
def H12():
    return helpers.l12()


@pytest.fixture
def H23():
    return helpers.l23()


@pytest.fixture
def H0():
    return helpers.edgeless()


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
