import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE: list[tuple[str, bool]] = []


def record_acceptance(label: str, passed: bool) -> None:
    _ACCEPTANCE.append((label, passed))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}")
