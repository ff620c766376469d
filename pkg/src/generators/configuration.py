"""
Uncorrelated configuration model (UCM) with structural cutoff sqrt(n)
"""
import logging
import math
from typing import List, Optional, Set, Tuple

import numpy as np

from config import Config
from errors import GeneratorError
from graph_core import Graph, from_edge_list
from utils import make_rng

logger = logging.getLogger(__name__)


def truncated_power_law(gamma: float, k_min: int, k_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """Support and probabilities of P(k) ~ k^-gamma on [k_min, k_max]"""
    ks = np.arange(k_min, k_max + 1)
    weights = ks.astype(np.float64) ** (-gamma)
    return ks, weights / weights.sum()


def sample_degree_sequence(
    n: int,
    gamma: float,
    k_min: int,
    rng: np.random.Generator,
    parity_retries: int = Config.UCM_PARITY_RETRIES,
) -> np.ndarray:
    """
    Draw n degrees from the truncated power law and force an even sum.

    An odd sum is repaired by redrawing the degree of one random node, which
    keeps every degree inside the support.

    Raises:
        GeneratorError: if the cutoff is below k_min or parity cannot be fixed
    """
    k_max = int(math.isqrt(n))
    if k_min > k_max:
        raise GeneratorError(f"UCM: k_min={k_min} exceeds the structural cutoff sqrt({n})={k_max}")

    ks, probs = truncated_power_law(gamma, k_min, k_max)
    degrees = rng.choice(ks, size=n, p=probs)
    for _ in range(parity_retries):
        if degrees.sum() % 2 == 0:
            return degrees
        node = int(rng.integers(n))
        degrees[node] = rng.choice(ks, p=probs)
    if degrees.sum() % 2 == 0:
        return degrees
    raise GeneratorError(f"UCM: no even degree sum after {parity_retries} redraws")


def _wire_once(
    degrees: np.ndarray, rng: np.random.Generator, retry_budget: int
) -> Optional[List[Tuple[int, int]]]:
    """Pair stubs uniformly, redrawing self-loop or duplicate partners; None on failure"""
    stubs = np.repeat(np.arange(len(degrees)), degrees).tolist()
    rng.shuffle(stubs)
    linked: Set[Tuple[int, int]] = set()
    edges: List[Tuple[int, int]] = []

    while stubs:
        u = stubs.pop()
        for _ in range(retry_budget):
            slot = int(rng.integers(len(stubs)))
            v = stubs[slot]
            pair = (min(u, v), max(u, v))
            if u != v and pair not in linked:
                break
        else:
            return None
        stubs[slot] = stubs[-1]
        stubs.pop()
        linked.add(pair)
        edges.append(pair)
    return edges


def gen_ucm(
    n: int,
    gamma: float,
    k_min: int,
    seed: int,
    retry_budget: int = Config.UCM_RETRY_BUDGET,
    max_restarts: int = Config.UCM_MAX_RESTARTS,
) -> Graph:
    """
    Uncorrelated configuration model.

    Args:
        n: Node count
        gamma: Power-law exponent in [1, 4]
        k_min: Minimum degree (>= 1)
        seed: 64-bit seed
        retry_budget: Partner redraws per stub before the wiring restarts
        max_restarts: Whole-wiring attempts before giving up

    Returns:
        Simple graph whose degrees never exceed sqrt(n)

    Raises:
        GeneratorError: bad parameters, or no simple wiring within max_restarts attempts
    """
    if k_min < 1:
        raise GeneratorError(f"UCM: k_min={k_min} must be >= 1")
    if not 1.0 <= gamma <= 4.0:
        raise GeneratorError(f"UCM: gamma={gamma} outside [1, 4]")

    rng = make_rng(seed)
    degrees = sample_degree_sequence(n, gamma, k_min, rng)

    for restart in range(max_restarts):
        edges = _wire_once(degrees, rng, retry_budget)
        if edges is not None:
            if restart:
                logger.debug(f"UCM n={n}: stub wiring succeeded after {restart} restarts")
            return from_edge_list(n, edges)

    logger.error(f"UCM n={n}, gamma={gamma}, k_min={k_min}: stub wiring failed {max_restarts} times")
    raise GeneratorError(
        f"UCM: no simple wiring for n={n}, gamma={gamma}, k_min={k_min} "
        f"after {max_restarts} restarts with retry budget {retry_budget}"
    )
