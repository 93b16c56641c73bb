import pytest

_VERDICTS: list[str] = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line per acceptance criterion.

    Call the returned function with a label and a detail string before the
    assertions; the outcome comes from the test result itself.
    """
    info = {}

    def record(label, detail=""):
        info["label"], info["detail"] = label, detail

    yield record
    if "label" in info:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        _VERDICTS.append(f"{'PASS' if ok else 'FAIL'}  {info['label']}  {info['detail']}".rstrip())
        print(_VERDICTS[-1])


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
