import pytest
from hypothesis import settings

from superforms.grassmann import GrassmannAlgebra
from superforms.sampling import Sampler

settings.register_profile("superforms", max_examples=60, deadline=None)
settings.load_profile("superforms")


@pytest.fixture
def alg():
    return GrassmannAlgebra(6)


@pytest.fixture
def sampler():
    return Sampler(2024, pool=4)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
