import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "SUMMARY", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for text, passed in lines:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {text}")
    failed = sum(1 for _, ok in lines if not ok)
    terminalreporter.write_line(f"{len(lines) - failed} passed, {failed} failed")
