"""
Shared graph fixtures
"""
from __future__ import annotations

import pytest

from graph_core import Graph, from_edge_list


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def ring_lattice(n: int, degree: int) -> Graph:
    half = degree // 2
    return from_edge_list(n, [(i, (i + d) % n) for i in range(n) for d in range(1, half + 1)])


@pytest.fixture
def k2() -> Graph:
    return complete_graph(2)


@pytest.fixture
def k3() -> Graph:
    return complete_graph(3)


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def path3() -> Graph:
    return from_edge_list(3, [(0, 1), (1, 2)])


@pytest.fixture
def star4() -> Graph:
    """Center 0 with leaves 1, 2, 3"""
    return from_edge_list(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def ring20() -> Graph:
    return ring_lattice(20, 4)


@pytest.fixture
def two_edges() -> Graph:
    return from_edge_list(4, [(0, 1), (2, 3)])


@pytest.fixture
def lollipop() -> Graph:
    """Triangle with a two-node tail: irregular, not vertex-transitive"""
    return from_edge_list(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
