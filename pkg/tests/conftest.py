import pytest

from fatpoints.points import PointConfig, sample_config, star_configuration

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def coord3():
    return PointConfig.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]], label="coord3")


@pytest.fixture
def coord4():
    return PointConfig.of([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], label="coord4")


@pytest.fixture
def collinear3():
    return PointConfig.of([[1, 0, 0], [0, 1, 0], [1, 1, 0]], label="collinear3")


@pytest.fixture
def five_points():
    # seed 5: no three collinear; the unique conic is smooth enough for the tests
    return sample_config(5, 2, 5)


@pytest.fixture
def star6():
    return star_configuration([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
