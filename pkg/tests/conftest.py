import pytest

_ACCEPTANCE: list[tuple[str, bool, str]] = []


class CriterionRecorder:
    def __init__(self, name: str):
        self.name = name
        self.details: list[str] = []

    def note(self, text: str) -> None:
        self.details.append(text)


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome for the end-of-run summary."""
    rec = CriterionRecorder(request.node.name)
    yield rec
    failed = getattr(request.node, "rep_call", None)
    passed = failed is not None and failed.passed
    _ACCEPTANCE.append((rec.name, passed, "; ".join(rec.details)))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        line = f"{'PASS' if passed else 'FAIL'} {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
