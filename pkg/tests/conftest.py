import contextlib
import time

import pytest

from cldp import CldpConfig

_RESULTS = pytest.StashKey[list]()


@pytest.fixture
def cfg():
    return CldpConfig(num_users=4, tossing_space=5, window_size=10, amplitude=2.0, master_seed=7)


@pytest.fixture
def criterion(request):
    """Context manager recording one acceptance criterion with its time budget."""
    results = request.config.stash.setdefault(_RESULTS, [])

    @contextlib.contextmanager
    def run(number, title, budget):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException:
            results.append((number, title, False, time.perf_counter() - t0, budget))
            raise
        elapsed = time.perf_counter() - t0
        ok = elapsed < budget
        results.append((number, title, ok, elapsed, budget))
        assert ok, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, budget in sorted(results):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"[{status}] AC{number} {title} ({elapsed:.2f}s / {budget:g}s)"
        )
