import pytest
from hypothesis import strategies as st

from ifam.graphspace import Graph, num_edges

_criteria: dict[str, str] = {}


@st.composite
def graphs(draw, min_n=1, max_n=8, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << num_edges(n)) - 1))
    return Graph(n, bits)


@st.composite
def graph_pairs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return draw(graphs(n=n)), draw(graphs(n=n))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    line = "PASS" if report.passed else "FAIL"
    _criteria[marker.args[0]] = line
    print(f"\n{line} criterion {marker.args[0]}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{_criteria[label]}  {label}")
