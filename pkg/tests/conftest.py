import pytest

from orthosep.gf import field_make

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def F():
    """Field factory: F(3) is GF(3)."""
    return field_make


@pytest.fixture
def record_criterion():
    def record(name: str, passed: bool, detail: str = ""):
        _CRITERIA[name] = (passed, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split()[0])):
        passed, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
