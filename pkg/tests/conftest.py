import pytest

ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion; the line is printed in the summary."""
    state = {}

    def report(label, ok, detail=""):
        state["line"] = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        print(state["line"])
        assert ok, state["line"]

    yield report
    line = state.get("line")
    if line is None:
        line = f"FAIL  {request.node.name}  (raised before reporting)"
    ACCEPTANCE.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
