"""
Monte Carlo death-birth dynamics with payoff-proportional copying.

Each step a uniformly random node x is chosen; it copies the strategy of a
neighbor y picked with probability proportional to 1 + delta * f_y, where f
is the degree-averaged payoff. There is no self-replacement.
"""
import logging
import math
from multiprocessing import Pool
from typing import List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator

from config import Config
from errors import GraphError, SelectionStrengthError, StepLimitExceeded
from graph_core import Graph
from utils import make_rng
from .game import GameMatrix, StrategyState

logger = logging.getLogger(__name__)

Placement = Union[str, int]

# Random numbers drawn per refill inside a trial
_BLOCK = 4096


class TrialSummary(BaseModel):
    """Fixation counts of a batch of independent trials"""
    trials: int = Field(ge=1)
    fixations_C: int = Field(ge=0)
    estimate: float = 0.0
    std_error: float = 0.0
    total_steps: int = 0

    @model_validator(mode='after')
    def _derive(self):
        if self.fixations_C > self.trials:
            raise ValueError("more fixations than trials")
        estimate = self.fixations_C / self.trials
        self.estimate = estimate
        self.std_error = math.sqrt(estimate * (1.0 - estimate) / self.trials)
        return self

    def within(self, value: float, n_errors: float) -> bool:
        """|estimate - value| <= n_errors standard errors (exact match when the error is 0)"""
        return abs(self.estimate - value) <= n_errors * self.std_error


def _require_degrees(g: Graph):
    if g.n and g.degrees.min() == 0:
        raise GraphError(f"payoffs undefined: node {int(np.argmin(g.degrees))} is isolated")


def _averaged_payoffs(s: np.ndarray, c: np.ndarray, k: np.ndarray, game: GameMatrix) -> np.ndarray:
    return np.where(
        s == 1,
        game.R * c + game.S * (k - c),
        game.T * c + game.P * (k - c),
    ) / k


def payoffs(g: Graph, state: StrategyState, game: GameMatrix) -> np.ndarray:
    """
    Degree-averaged payoff of every node.

    For the donation game this is -c s_x + (b / k_x) sum_{y in N(x)} s_y.
    """
    _require_degrees(g)
    if state.n != g.n:
        raise ValueError(f"state has {state.n} nodes, graph has {g.n}")
    s = state.s.astype(np.float64)
    cooperating_neighbors = g.adjacency_matrix() @ s
    return _averaged_payoffs(state.s, cooperating_neighbors, g.degrees.astype(np.float64), game)


def check_selection_strength(game: GameMatrix, delta: float):
    """
    Every copying weight 1 + delta * f stays above the configured minimum.

    Averaged payoffs are convex combinations of R, S, T and P, so checking the
    entries covers every state.
    """
    entries = (game.R, game.S, game.T, game.P)
    weakest = 1.0 + min(delta * e for e in entries)
    if weakest <= Config.MIN_COPY_WEIGHT:
        raise SelectionStrengthError(
            f"delta={delta} gives copying weight {weakest:.3g}; use a smaller |delta|"
        )


def step(
    g: Graph, state: StrategyState, game: GameMatrix, delta: float, rng: np.random.Generator
) -> StrategyState:
    """One death-birth update; returns the new state"""
    _require_degrees(g)
    x = int(rng.integers(g.n))
    neighbors = np.asarray(g.neighbors[x])
    weights = 1.0 + delta * payoffs(g, state, game)[neighbors]
    if weights.min() <= Config.MIN_COPY_WEIGHT:
        raise SelectionStrengthError(
            f"copying weight {weights.min():.3g} at node {x}; use a smaller delta"
        )
    y = int(neighbors[rng.choice(len(neighbors), p=weights / weights.sum())])

    s = state.s.copy()
    s[x] = s[y]
    return StrategyState(s)


class _Dynamics:
    """Incremental state for fast trials: cooperating-neighbor counts and payoffs"""

    def __init__(self, g: Graph, game: GameMatrix, delta: float):
        _require_degrees(g)
        check_selection_strength(game, delta)
        self.g = g
        self.game = game
        self.delta = delta
        self.neighbors = [np.asarray(nb, dtype=np.int64) for nb in g.neighbors]
        self.k = g.degrees.astype(np.float64)
        self.adjacency = g.adjacency_matrix()

    def run(self, initial: np.ndarray, rng: np.random.Generator, max_steps: int) -> Tuple[bool, int]:
        n = self.g.n
        s = initial.astype(np.int64)
        cooperators = int(s.sum())
        if cooperators in (0, n):
            return cooperators == n, 0

        selective = self.delta != 0.0
        c = np.asarray(self.adjacency @ s, dtype=np.float64)
        f = _averaged_payoffs(s, c, self.k, self.game) if selective else None

        steps = 0
        cursor = _BLOCK
        while 0 < cooperators < n:
            if steps >= max_steps:
                raise StepLimitExceeded(steps)
            if cursor == _BLOCK:
                picks = rng.integers(0, n, size=_BLOCK)
                draws = rng.random(_BLOCK)
                cursor = 0
            x = picks[cursor]
            u = draws[cursor]
            cursor += 1
            steps += 1

            nb = self.neighbors[x]
            if selective:
                cumulative = np.cumsum(1.0 + self.delta * f[nb])
                slot = min(int(np.searchsorted(cumulative, u * cumulative[-1], side='right')), len(nb) - 1)
            else:
                slot = int(u * len(nb))
            y = nb[slot]

            if s[y] != s[x]:
                change = 1 if s[y] else -1
                s[x] = s[y]
                cooperators += change
                c[nb] += change
                if selective:
                    touched = np.append(nb, x)
                    f[touched] = _averaged_payoffs(s[touched], c[touched], self.k[touched], self.game)

        return cooperators == n, steps


def default_step_cap(n: int) -> int:
    return Config.STEP_CAP_FACTOR * n * n


def run_to_fixation(
    g: Graph,
    initial: StrategyState,
    game: GameMatrix,
    delta: float,
    rng: np.random.Generator,
    max_steps: Optional[int] = None,
) -> bool:
    """
    Iterate death-birth steps until unanimity.

    Returns:
        True iff cooperators fix

    Raises:
        StepLimitExceeded: no absorbing state within max_steps (default 1e4 n^2)
    """
    if initial.n != g.n:
        raise ValueError(f"state has {initial.n} nodes, graph has {g.n}")
    fixed, _ = _Dynamics(g, game, delta).run(
        initial.s, rng, max_steps if max_steps is not None else default_step_cap(g.n)
    )
    return fixed


def _placement_node(placement: Placement, n: int, rng: np.random.Generator) -> int:
    if placement == 'uniform':
        return int(rng.integers(n))
    return int(placement)


def _run_trials(args) -> Tuple[int, int]:
    """Worker entry: (fixations, steps) over trial indices [start, stop)"""
    g, game, delta, placement, master_seed, start, stop, max_steps = args
    dynamics = _Dynamics(g, game, delta)
    fixations = 0
    total_steps = 0
    for trial in range(start, stop):
        rng = make_rng(master_seed, trial)
        x = _placement_node(placement, g.n, rng)
        initial = np.zeros(g.n, dtype=np.int64)
        initial[x] = 1
        fixed, steps = dynamics.run(initial, rng, max_steps)
        fixations += fixed
        total_steps += steps
    return fixations, total_steps


def _chunks(trials: int, workers: int) -> List[Tuple[int, int]]:
    bounds = np.linspace(0, trials, min(trials, workers * 4) + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def estimate_fixation(
    g: Graph,
    game: GameMatrix,
    delta: float,
    trials: int,
    placement: Placement = 'uniform',
    master_seed: int = 0,
    workers: int = 1,
    max_steps: Optional[int] = None,
) -> TrialSummary:
    """
    Estimate the fixation probability of a single cooperator.

    Args:
        g: Connected graph
        game: 2x2 game
        delta: Selection strength
        trials: Number of independent runs (>= 1)
        placement: 'uniform' for a random starting node per trial, or a node index
        master_seed: Trial t uses the stream derived from (master_seed, t)
        workers: Processes to spread trials over; the result does not depend on it
        max_steps: Per-trial step cap (default 1e4 n^2)

    Returns:
        TrialSummary with binomial standard error
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if placement != 'uniform':
        if not isinstance(placement, (int, np.integer)) or not 0 <= int(placement) < g.n:
            raise ValueError(f"placement must be 'uniform' or a node index in [0, {g.n}), got {placement!r}")
    check_selection_strength(game, delta)
    cap = max_steps if max_steps is not None else default_step_cap(g.n)

    jobs = [(g, game, delta, placement, master_seed, a, b, cap) for a, b in _chunks(trials, max(workers, 1))]
    try:
        if workers > 1 and len(jobs) > 1:
            with Pool(processes=workers) as pool:
                results = pool.map(_run_trials, jobs)
        else:
            results = [_run_trials(job) for job in jobs]
    except Exception as e:
        logger.error(f"Fixation estimate failed on n={g.n}, delta={delta}: {e}")
        raise

    fixations = sum(r[0] for r in results)
    steps = sum(r[1] for r in results)
    summary = TrialSummary(trials=trials, fixations_C=fixations, total_steps=steps)
    logger.info(
        f"Fixation estimate n={g.n}, delta={delta}, placement={placement}: "
        f"{summary.estimate:.5f} +/- {summary.std_error:.5f} over {trials} trials"
    )
    return summary
