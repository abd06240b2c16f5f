import os
from contextlib import contextmanager

import hypothesis
import pytest

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=2000, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def criterion(request):
    """Context manager that logs one PASS/FAIL line per acceptance criterion."""
    results = request.config.stash[_RESULTS]

    @contextmanager
    def check(number, title):
        try:
            yield
        except BaseException:
            results.append(f"FAIL  criterion {number}: {title}")
            raise
        results.append(f"PASS  criterion {number}: {title}")

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, [])
    if results:
        terminalreporter.section("acceptance criteria")
        for line in sorted(results, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
