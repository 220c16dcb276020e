import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))

# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def cusp():
    from nalink.blowup import Pair, resolve

    return resolve(Pair.curve("y^2 - x^3"))


@pytest.fixture(scope="session")
def tacnode():
    from nalink.blowup import Pair, resolve

    return resolve(Pair.curve("y^2 - x^4"))


@pytest.fixture(scope="session")
def origin():
    from nalink.blowup import Pair, resolve

    return resolve(Pair.point())


@pytest.fixture(scope="session")
def node():
    from nalink.blowup import Pair, resolve

    return resolve(Pair.curve("x*y"))
