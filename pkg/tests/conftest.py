"""Shared test plumbing: collect acceptance lines for a terminal summary."""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(tag: str, ok: bool, summary: str) -> bool:
    line = f"ACCEPTANCE {tag}: {'PASS' if ok else 'FAIL'} -- {summary}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
