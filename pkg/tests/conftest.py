# Prints the acceptance summary collected by test_acceptance.py.

ACCEPTANCE: list[tuple[int, str, bool, float, float]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, elapsed, limit in sorted(ACCEPTANCE):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {num:>2}: {title} ({elapsed:.2f}s, limit {limit:g}s)")
