"""Shared pytest wiring: echo the release checklist after a full run."""


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("release checklist")
    for line in VERDICTS:
        terminalreporter.write_line(line)
