"""
Independent-edge generators: Erdos-Renyi, stochastic block model, small world
"""
import logging

import numpy as np

from errors import GeneratorError
from graph_core import Graph, from_edge_list
from utils import make_rng
from .spec import SbmParams

logger = logging.getLogger(__name__)


def _bernoulli_pairs(n: int, probs: np.ndarray, rng: np.random.Generator) -> Graph:
    """Link each pair (i < j), in triu order, with its own probability"""
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(len(rows)) < probs
    return from_edge_list(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def gen_er(n: int, p: float, seed: int) -> Graph:
    """G(n, p): every pair linked independently with probability p"""
    if not 0.0 <= p <= 1.0:
        raise GeneratorError(f"ER: p={p} outside [0, 1]")
    rng = make_rng(seed)
    return _bernoulli_pairs(n, np.full(n * (n - 1) // 2, p), rng)


def gen_sbm(params: SbmParams, seed: int) -> Graph:
    """
    Stochastic block model with balanced deterministic groups.

    Node i belongs to group i mod m. With m=1 or p=q the draw consumes the
    random stream exactly like gen_er, so the two coincide seed for seed.
    """
    rng = make_rng(seed)
    groups = np.arange(params.n) % params.m
    rows, cols = np.triu_indices(params.n, k=1)
    probs = np.where(groups[rows] == groups[cols], params.p, params.q)
    return _bernoulli_pairs(params.n, probs, rng)


def gen_small_world(n: int, lattice_degree: int, p_add: float, seed: int) -> Graph:
    """
    Ring lattice plus random shortcuts (shortcut addition, no rewiring).

    Each node links to lattice_degree/2 neighbors on either side. Every
    non-lattice pair then becomes a shortcut independently, with probability
    chosen so that the expected shortcut count is p_add * n * lattice_degree / 2.
    """
    if lattice_degree % 2 or lattice_degree < 2:
        raise GeneratorError(f"SmallWorld: lattice_degree={lattice_degree} must be even and >= 2")
    if lattice_degree >= n:
        raise GeneratorError(f"SmallWorld: lattice_degree={lattice_degree} must be below n={n}")
    if not 0.0 <= p_add <= 1.0:
        raise GeneratorError(f"SmallWorld: p_add={p_add} outside [0, 1]")

    rng = make_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    gap = cols - rows
    ring_distance = np.minimum(gap, n - gap)
    lattice = ring_distance <= lattice_degree // 2

    free_pairs = int((~lattice).sum())
    expected_shortcuts = p_add * n * lattice_degree / 2
    p_shortcut = min(1.0, expected_shortcuts / free_pairs) if free_pairs else 0.0

    shortcut = (~lattice) & (rng.random(len(rows)) < p_shortcut)
    keep = lattice | shortcut
    logger.debug(f"SmallWorld n={n}: {int(shortcut.sum())} shortcuts (p={p_shortcut:.3g})")
    return from_edge_list(n, zip(rows[keep].tolist(), cols[keep].tolist()))
