import pytest

from wreath_observable.fixtures import load_fixture
from wreath_observable.graphs import build_hidden_subgroup, normalize_pair


@pytest.fixture(scope="session")
def graphs():
    names = ["p3", "p3b", "k3", "k2", "empty3", "edge3", "rigid6a", "rigid6b", "rigid6a_relabeled"]
    return {name: load_fixture(name) for name in names}


@pytest.fixture(scope="session")
def hidden(graphs):
    """H for a few named pairs, keyed by (name1, name2)."""
    cache = {}

    def get(a, b):
        if (a, b) not in cache:
            cache[a, b] = build_hidden_subgroup(normalize_pair(graphs[a], graphs[b]))
        return cache[a, b]

    return get


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
