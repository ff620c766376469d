"""
Growth models: preferential attachment variants, Holme-Kim, Klemm-Eguiluz,
and the spatial scale-free model.

Every model starts from a clique on links_per_node + 1 nodes; each arriving
node then adds exactly links_per_node edges to distinct existing nodes, so the
edge count is m(m+1)/2 + m(n - m - 1).
"""
import logging
from typing import List, Set

import numpy as np

from errors import GeneratorError
from graph_core import Graph, from_edge_list
from utils import make_rng

logger = logging.getLogger(__name__)


class _Growth:
    """Mutable adjacency used while a growth model runs"""

    def __init__(self, n: int, m: int):
        if m < 1:
            raise GeneratorError(f"links_per_node={m} must be >= 1")
        if n < m + 1:
            raise GeneratorError(f"n={n} smaller than the seed clique ({m + 1} nodes)")
        self.n = n
        self.m = m
        self.adjacency: List[Set[int]] = [set() for _ in range(n)]
        self.degrees = np.zeros(n, dtype=np.float64)
        for u in range(m + 1):
            for v in range(u + 1, m + 1):
                self.link(u, v)

    @property
    def seed_size(self) -> int:
        return self.m + 1

    def link(self, u: int, v: int):
        self.adjacency[u].add(v)
        self.adjacency[v].add(u)
        self.degrees[u] += 1
        self.degrees[v] += 1

    def attach(self, t: int, targets):
        for v in targets:
            self.link(t, int(v))

    def graph(self, positions=None) -> Graph:
        edges = [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]
        return from_edge_list(self.n, edges, positions=positions)


def _choose(rng: np.random.Generator, weights: np.ndarray, size: int) -> np.ndarray:
    """Draw `size` distinct indices with probability proportional to weights"""
    total = weights.sum()
    if size > np.count_nonzero(weights) or total <= 0:
        raise GeneratorError(f"cannot draw {size} distinct targets from {np.count_nonzero(weights)} candidates")
    return rng.choice(len(weights), size=size, replace=False, p=weights / total)


def _kernel_growth(n: int, m: int, rng: np.random.Generator, kernel) -> Graph:
    growth = _Growth(n, m)
    for t in range(growth.seed_size, n):
        weights = kernel(growth.degrees[:t])
        growth.attach(t, _choose(rng, weights, m))
    return growth.graph()


def gen_pa_shifted(n: int, links_per_node: int, attractiveness: float, seed: int) -> Graph:
    """Preferential attachment with kernel k + attractiveness"""
    if not 1 <= links_per_node <= 5:
        raise GeneratorError(f"PAShifted: links_per_node={links_per_node} outside [1, 5]")
    if attractiveness < 0:
        raise GeneratorError(f"PAShifted: attractiveness={attractiveness} must be >= 0")
    rng = make_rng(seed)
    return _kernel_growth(n, links_per_node, rng, lambda k: k + attractiveness)


def gen_pa_superlinear(n: int, links_per_node: int, theta: float, seed: int) -> Graph:
    """Preferential attachment with kernel k**theta (k=0 counts as weight 1)"""
    if not 1 <= links_per_node <= 4:
        raise GeneratorError(f"PASuperlinear: links_per_node={links_per_node} outside [1, 4]")
    if not 0.0 <= theta <= 3.0:
        raise GeneratorError(f"PASuperlinear: theta={theta} outside [0, 3]")
    rng = make_rng(seed)

    def kernel(k: np.ndarray) -> np.ndarray:
        return np.where(k > 0, np.power(k, theta), 1.0)

    return _kernel_growth(n, links_per_node, rng, kernel)


def gen_holme_kim(n: int, links_per_node: int, p_triad: float, seed: int) -> Graph:
    """
    Holme-Kim growth: preferential attachment with triad formation.

    After a preferential step, each further link of the arriving node closes a
    triangle with probability p_triad by linking to a random neighbor of the
    last preferential target. If that target has no unused neighbor the link
    falls back to a preferential step.
    """
    if not 1 <= links_per_node <= 5:
        raise GeneratorError(f"HolmeKim: links_per_node={links_per_node} outside [1, 5]")
    if not 0.0 <= p_triad <= 1.0:
        raise GeneratorError(f"HolmeKim: p_triad={p_triad} outside [0, 1]")

    rng = make_rng(seed)
    growth = _Growth(n, links_per_node)

    for t in range(growth.seed_size, n):
        chosen: List[int] = []

        def preferential() -> int:
            weights = growth.degrees[:t].copy()
            weights[chosen] = 0.0
            return int(_choose(rng, weights, 1)[0])

        last_pa = preferential()
        chosen.append(last_pa)
        while len(chosen) < links_per_node:
            target = None
            if rng.random() < p_triad:
                candidates = sorted(growth.adjacency[last_pa].difference(chosen))
                if candidates:
                    target = candidates[int(rng.integers(len(candidates)))]
            if target is None:
                target = preferential()
                last_pa = target
            chosen.append(target)

        growth.attach(t, chosen)

    return growth.graph()


def gen_klemm_eguiluz(n: int, links_per_node: int, crossover: float, seed: int) -> Graph:
    """
    Klemm-Eguiluz growth with links_per_node active nodes.

    The arriving node links to every active node, except that each such link is
    redirected with probability `crossover` to a node drawn preferentially from
    all existing nodes. The newcomer becomes active and one previously active
    node is deactivated with probability proportional to 1/k.
    """
    if not 1 <= links_per_node <= 5:
        raise GeneratorError(f"KlemmEguiluz: links_per_node={links_per_node} outside [1, 5]")
    if not 0.0 <= crossover <= 1.0:
        raise GeneratorError(f"KlemmEguiluz: crossover={crossover} outside [0, 1]")

    rng = make_rng(seed)
    growth = _Growth(n, links_per_node)
    active = list(range(1, growth.seed_size))

    for t in range(growth.seed_size, n):
        redirect = rng.random(len(active)) < crossover
        chosen = [a for a, r in zip(active, redirect) if not r]
        for _ in range(int(redirect.sum())):
            weights = growth.degrees[:t].copy()
            weights[chosen] = 0.0
            chosen.append(int(_choose(rng, weights, 1)[0]))
        growth.attach(t, chosen)

        inverse_degree = 1.0 / growth.degrees[active]
        dropped = int(_choose(rng, inverse_degree, 1)[0])
        active.pop(dropped)
        active.append(t)

    return growth.graph()


def gen_spatial_sf(n: int, links_per_node: int, r_c: float, seed: int) -> Graph:
    """
    Spatial scale-free growth in the unit square.

    Positions are uniform; an arriving node attaches to existing node j with
    probability proportional to k_j * exp(-d_ij / r_c).
    """
    if links_per_node < 1:
        raise GeneratorError(f"SpatialSF: links_per_node={links_per_node} must be >= 1")
    if r_c <= 0:
        raise GeneratorError(f"SpatialSF: r_c={r_c} must be > 0")

    rng = make_rng(seed)
    positions = rng.random((n, 2))
    growth = _Growth(n, links_per_node)
    tiny = np.finfo(np.float64).tiny

    for t in range(growth.seed_size, n):
        distance = np.linalg.norm(positions[:t] - positions[t], axis=1)
        log_weight = np.log(growth.degrees[:t]) - distance / r_c
        weights = np.maximum(np.exp(log_weight - log_weight.max()), tiny)
        growth.attach(t, _choose(rng, weights, links_per_node))

    return growth.graph(positions=[tuple(p) for p in positions.tolist()])
