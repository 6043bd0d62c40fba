import pytest

from graphanon.graph import (complete_bipartite_graph, complete_graph, cycle_graph, path_graph,
                             star_graph)

ACCEPTANCE_LINES = []


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k33():
    return complete_bipartite_graph(3, 3)


@pytest.fixture
def star():
    return star_graph(4)


@pytest.fixture
def record_criterion():
    def record(name, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
