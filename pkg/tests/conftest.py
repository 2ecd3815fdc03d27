import pytest

from coupledfp.product_space import real_line
from coupledfp.probes import real_line_sampler


def example1(x, y):
    return (x - 3.0 * y) / 5.0


@pytest.fixture
def F1():
    return example1


@pytest.fixture
def R():
    return real_line()


@pytest.fixture
def sampler():
    return real_line_sampler(seed=1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(RESULTS):
        ok, detail = RESULTS[crit]
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  {detail}")
