import numpy as np
import pytest

from spatial_risk.special import quantile

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def u75():
    return quantile(0.75)


@pytest.fixture
def acceptance(request):
    """Record one criterion outcome for the end-of-run summary."""
    log = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(name, passed, detail):
        log.append((name, bool(passed), detail))
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in log:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
