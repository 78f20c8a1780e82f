import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = {}


class CriterionLog:
    """Collects pass/fail outcomes of the acceptance criteria for the summary."""

    def record(self, number, ok, detail):
        _CRITERIA.setdefault(number, []).append((bool(ok), detail))
        return ok


@pytest.fixture(scope="session")
def criteria():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entries = _CRITERIA[number]
        passed = sum(ok for ok, _ in entries)
        status = "PASS" if passed == len(entries) else "FAIL"
        shown = entries if len(entries) <= 4 else [e for e in entries if not e[0]] or entries[-1:]
        detail = "; ".join(d for _, d in shown)
        terminalreporter.write_line(f"criterion {number}: {status} [{passed}/{len(entries)}] {detail}")
