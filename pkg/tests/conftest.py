import pytest

from entourage.rel_core import Carrier, Entourage
from entourage.spaces import all_spaces

ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, seconds, limit in sorted(ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {status}  {seconds:10.6f}s / {limit}s  {title}")


@pytest.fixture(scope="session")
def three():
    return Carrier(("0", "1", "2"))


@pytest.fixture(scope="session")
def spaces3(three):
    return list(all_spaces(three))


@pytest.fixture
def e1(three):
    return Entourage.from_pairs(three, [("0", "1"), ("0", "2"), ("1", "0"), ("2", "0")]) | Entourage.diagonal(three)


@pytest.fixture
def e2(three):
    return Entourage.from_pairs(three, [("0", "1"), ("0", "2")]) | Entourage.diagonal(three)
