"""
Immutable simple undirected graphs and degree statistics
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from errors import GraphError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeMoments:
    """First and second moments of a degree distribution"""
    n: int
    mu1: float
    mu2: float

    @property
    def variance(self) -> float:
        return self.mu2 - self.mu1 ** 2


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on nodes 0..n-1.

    neighbors[x] is sorted ascending and never contains x or duplicates.
    Build instances through from_edge_list(); the constructor trusts its input.
    """
    n: int
    neighbors: Tuple[Tuple[int, ...], ...]
    positions: Optional[Tuple[Tuple[float, float], ...]] = field(default=None, compare=False, repr=False)

    @cached_property
    def degrees(self) -> np.ndarray:
        k = np.fromiter((len(nb) for nb in self.neighbors), dtype=np.int64, count=self.n)
        k.flags.writeable = False
        return k

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def degree(self, x: int) -> int:
        return len(self.neighbors[x])

    def edges(self) -> List[Tuple[int, int]]:
        """Sorted (u, v) pairs with u < v"""
        return [(u, v) for u, nb in enumerate(self.neighbors) for v in nb if u < v]

    @cached_property
    def _adjacency(self) -> sparse.csr_matrix:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=indptr[1:])
        indices = np.fromiter(
            (v for nb in self.neighbors for v in nb), dtype=np.int64, count=int(indptr[-1])
        )
        data = np.ones(len(indices), dtype=np.float64)
        return sparse.csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def adjacency_matrix(self, dense: bool = False):
        """Adjacency matrix as scipy CSR (or a dense numpy copy)"""
        if dense:
            return self._adjacency.toarray()
        return self._adjacency.copy()

    def transition_matrix(self, dense: bool = False):
        """Random-walk matrix W = D^-1 A; requires min degree >= 1"""
        if self.n and self.degrees.min() == 0:
            raise GraphError("transition matrix undefined: graph has an isolated node")
        inv_k = sparse.diags(1.0 / self.degrees.astype(np.float64))
        w = (inv_k @ self._adjacency).tocsr()
        return w.toarray() if dense else w

    def to_networkx(self):
        """Copy into a networkx.Graph (used by tests and ad-hoc analysis)"""
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


def from_edge_list(
    n: int,
    edges: Iterable[Sequence[int]],
    positions: Optional[Sequence[Tuple[float, float]]] = None,
) -> Graph:
    """
    Build a Graph from index pairs.

    Args:
        n: Node count (>= 1)
        edges: Iterable of (u, v) pairs with 0 <= u, v < n
        positions: Optional per-node coordinates carried along unchanged

    Returns:
        Graph with duplicate pairs collapsed

    Raises:
        GraphError: on out-of-range indices or self-loops
    """
    if n < 1:
        raise GraphError(f"node count must be >= 1, got {n}")

    adjacency: List[set] = [set() for _ in range(n)]
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at node {u}")
        adjacency[u].add(v)
        adjacency[v].add(u)

    if positions is not None:
        if len(positions) != n:
            raise GraphError(f"expected {n} positions, got {len(positions)}")
        positions = tuple((float(x), float(y)) for x, y in positions)

    return Graph(
        n=n,
        neighbors=tuple(tuple(sorted(nb)) for nb in adjacency),
        positions=positions,
    )


def degree_moments(g: Graph) -> DegreeMoments:
    """mu1 = mean degree, mu2 = mean squared degree"""
    k = g.degrees.astype(np.float64)
    return DegreeMoments(n=g.n, mu1=float(k.mean()), mu2=float((k * k).mean()))


def reciprocal_degree_weight(g: Graph, x: int) -> float:
    """p_x = sum over neighbors y of 1/(k_x k_y)"""
    if not 0 <= x < g.n:
        raise GraphError(f"node {x} outside [0, {g.n})")
    k_x = g.degree(x)
    if k_x == 0:
        raise GraphError(f"p_x undefined for isolated node {x}")
    return float(sum(1.0 / g.degree(y) for y in g.neighbors[x]) / k_x)


def reciprocal_degree_weights(g: Graph) -> np.ndarray:
    """Vector of p_x for every node"""
    if g.degrees.min() == 0:
        isolated = int(np.argmin(g.degrees))
        raise GraphError(f"p_x undefined for isolated node {isolated}")
    inv_k = 1.0 / g.degrees.astype(np.float64)
    return inv_k * (g._adjacency @ inv_k)


def sum_k_p(g: Graph) -> float:
    """sum_x k_x p_x, which equals n whenever every node has an edge"""
    return float(np.dot(g.degrees, reciprocal_degree_weights(g)))


def component_sizes(g: Graph) -> List[int]:
    """Connected component sizes, largest first"""
    if g.n == 0:
        return []
    _, labels = connected_components(g.adjacency_matrix(), directed=False)
    return sorted(np.bincount(labels).tolist(), reverse=True)


def is_connected(g: Graph) -> bool:
    """Exactly one connected component"""
    return len(component_sizes(g)) == 1
