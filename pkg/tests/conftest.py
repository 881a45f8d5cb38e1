import numpy as np
import pytest

from pwcapprox import from_values, make_chirp

TWO_STEP = [8.0, 5.5, 2.0, 3.0]


@pytest.fixture
def two_step():
    return from_values(TWO_STEP, 0.0, 4.0)


@pytest.fixture(scope="session")
def chirp():
    return make_chirp(100_000)


def random_step_signal(rng, max_cells=12):
    M = int(rng.integers(2, max_cells + 1))
    return from_values(rng.integers(0, 256, M).astype(float), 0.0, float(M))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def record(request):
    """Store one acceptance verdict line; the test still asserts on its own."""

    def _record(key, ok, detail):
        ACCEPTANCE[key] = f"{key}: {'PASS' if ok else 'FAIL'}  {detail}"

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0][1:])):
            terminalreporter.write_line(ACCEPTANCE[key])
