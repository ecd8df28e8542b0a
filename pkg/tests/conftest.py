import pytest

from gen import suite3

_ACCEPTANCE = {}


def record(criterion: int, ok: bool, detail: str = ""):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    _ACCEPTANCE.setdefault(criterion, []).append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(_ACCEPTANCE):
        for line in _ACCEPTANCE[c]:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def suite():
    return suite3(100)
