import pytest

from deltachanges import PrefixFreeMachine

ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []


@pytest.fixture
def m0():
    return PrefixFreeMachine([("0", "1", 2), ("10", "00", 1), ("110", "1", 5)], "M0")


@pytest.fixture
def record_criterion(request):
    """Call with a criterion label; the outcome is printed in the terminal summary."""
    labels = []

    def record(label):
        labels.append(label)

    yield record
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    for label in labels:
        ACCEPTANCE_RESULTS.append((status, label, request.node.name))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for status, label, name in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{status}  {label}  ({name})")
