"""
Exact fixation probabilities by solving the full absorbing Markov chain.

States are bitmasks (bit x = s_x) over all 2^n strategy assignments. A
death-birth step flips at most one bit, so each row of the transition
operator has at most n + 1 entries and the hitting-probability system is
solved as a sparse linear system.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from config import Config
from errors import DisconnectedGraphError, OracleSizeError
from evodyn import GameMatrix, StrategyState, check_selection_strength
from graph_core import Graph, component_sizes

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ChainSolution:
    """
    Probability of reaching all-C from every state.

    Attributes:
        n: Node count
        rho_by_initial: Array of length 2^n indexed by state bitmask
        delta: Selection strength of the chain
        max_outflow_error: Largest amount by which a row of the flip
            probabilities leaves [0, 1] (negative entry, or total above one)
    """
    n: int
    rho_by_initial: np.ndarray
    delta: float
    max_outflow_error: float = 0.0

    def rho(self, state: StrategyState) -> float:
        return float(self.rho_by_initial[state.mask()])

    def single(self, x: int) -> float:
        """Fixation probability of one cooperator at node x"""
        return float(self.rho_by_initial[1 << x])

    def uniform_average(self) -> float:
        """Mean over single-cooperator placements"""
        return float(self.rho_by_initial[1 << np.arange(self.n)].mean())


def _flip_probabilities(g: Graph, game: GameMatrix, delta: float):
    """
    F[S, x] = probability that the step from state S flips node x.

    Returns (F, largest violation of F >= 0 and sum_x F[S, x] <= 1).
    """
    n = g.n
    states = np.arange(1 << n, dtype=np.int64)
    bits = ((states[:, None] >> np.arange(n)) & 1).astype(np.float64)

    adjacency = g.adjacency_matrix(dense=True)
    k = g.degrees.astype(np.float64)
    cooperating = bits @ adjacency
    f = np.where(bits == 1, game.R * cooperating + game.S * (k - cooperating),
                 game.T * cooperating + game.P * (k - cooperating)) / k
    w = 1.0 + delta * f

    total = w @ adjacency
    toward_c = (w * bits) @ adjacency / total
    toward_d = (w * (1.0 - bits)) @ adjacency / total
    flips = np.where(bits == 1, toward_d, toward_c) / n

    stay = 1.0 - flips.sum(axis=1)
    outflow_error = float(max(0.0, -stay.min(), -flips.min()))
    if outflow_error > 1e-12:
        logger.warning(f"Absorbing chain n={n}, delta={delta}: flip probabilities off by {outflow_error:.3g}")
    return flips, outflow_error


def exact_fixation_markov(g: Graph, game: GameMatrix, delta: float) -> ChainSolution:
    """
    Hitting probability of all-C from every state of the death-birth chain.

    Raises:
        OracleSizeError: n above the enumeration cap (2^n states)
        DisconnectedGraphError: the absorbing system is singular
        SelectionStrengthError: some copying weight is not positive
    """
    if g.n > Config.ORACLE_MAX_N:
        raise OracleSizeError(f"n={g.n} exceeds the enumeration cap of {Config.ORACLE_MAX_N}")
    if g.n < 2:
        raise OracleSizeError(f"enumeration needs at least 2 nodes, got {g.n}")
    sizes = component_sizes(g)
    if len(sizes) > 1:
        raise DisconnectedGraphError(sizes, context="absorbing chain")
    check_selection_strength(game, delta)

    n = g.n
    full = (1 << n) - 1
    flips, outflow_error = _flip_probabilities(g, game, delta)

    states = np.arange(full + 1, dtype=np.int64)
    rows = np.repeat(states, n)
    cols = (states[:, None] ^ (1 << np.arange(n, dtype=np.int64))).ravel()
    moves = sparse.csr_matrix((flips.ravel(), (rows, cols)), shape=(full + 1, full + 1))
    generator = sparse.diags(flips.sum(axis=1)) - moves

    transient = states[1:full]
    system = generator[transient][:, transient].tocsc()
    rhs = np.asarray(moves[transient][:, [full]].todense()).ravel()

    try:
        solution = spsolve(system, rhs)
    except Exception as e:
        logger.error(f"Absorbing-chain solve failed for n={n}: {e}")
        raise

    rho = np.zeros(full + 1)
    rho[transient] = np.clip(solution, 0.0, 1.0)
    rho[full] = 1.0
    rho.flags.writeable = False
    logger.debug(f"Absorbing chain n={n}, delta={delta}: {full - 1} transient states solved")
    return ChainSolution(n=n, rho_by_initial=rho, delta=delta, max_outflow_error=outflow_error)


def fixation_slope(g: Graph, game: GameMatrix, step: float = Config.ORACLE_FD_DELTA) -> float:
    """
    d rho / d delta at delta = 0 by central difference of the
    uniform-placement fixation probability.
    """
    up = exact_fixation_markov(g, game, step).uniform_average()
    down = exact_fixation_markov(g, game, -step).uniform_average()
    return (up - down) / (2.0 * step)
