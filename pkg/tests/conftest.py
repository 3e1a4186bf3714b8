from pathlib import Path

import pytest

import branchsys as b

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def three_vertex_graph():
    return b.parse_graph((DATA / "three_vertex_graph.json").read_text())


@pytest.fixture(scope="session")
def three_vertex_system():
    return b.load_system((DATA / "three_vertex_system.json").read_text())


@pytest.fixture(scope="session")
def shift_line_system():
    return b.load_system((DATA / "shift_line_system.json").read_text())
