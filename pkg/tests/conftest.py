import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("quatspec", max_examples=60, deadline=None)
settings.load_profile("quatspec")


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(1234))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
