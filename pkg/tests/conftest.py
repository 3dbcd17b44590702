import pytest

from halfsplit import P, T, MemoTable

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def memo_t():
    m = MemoTable(T)
    m.extend_to(4096)
    return m


@pytest.fixture(scope="session")
def memo_p():
    m = MemoTable(P)
    m.extend_to(4096)
    return m


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
