import pytest

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, description); pass/fail comes from the test outcome."""
    entry = {}

    def record(number: int, text: str) -> None:
        entry["number"], entry["text"] = number, text

    yield record
    if entry:
        rep = getattr(request.node, "rep_call", None)
        _ACCEPTANCE[entry["number"]] = (rep is not None and rep.passed, entry["text"])


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
    for number in sorted(_ACCEPTANCE):
        ok, text = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
