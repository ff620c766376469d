"""
Remeeting times, exact fixation probability and exact critical ratio
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from config import Config
from errors import GraphError, IdentityViolationError, PoleError
from evodyn.game import GameMatrix
from graph_core import Graph, reciprocal_degree_weights
from .meeting_times import MeetingTimes, meeting_times
from .ratio import CriticalRatio, sigma_from_ratio

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoalescenceSummary:
    """
    Per-node remeeting times and reciprocal-degree weights.

    identity_error is the relative error of sum_x k_x^2 tau_x = (n mu1)^2.
    """
    n: int
    mu1: float
    degrees: np.ndarray
    tau_x: np.ndarray
    p_x: np.ndarray
    identity_error: float = 0.0

    @property
    def total_degree(self) -> float:
        return self.n * self.mu1


def remeeting_times(
    g: Graph, mt: MeetingTimes, identity_tolerance: float = Config.IDENTITY_REL_TOLERANCE
) -> CoalescenceSummary:
    """
    tau_x = 1 + (1/k_x) sum_{y in N(x)} tau_yx.

    Raises:
        IdentityViolationError: sum k^2 tau_x misses (n mu1)^2 by more than
            identity_tolerance relative, which means the table was solved too loosely
    """
    if mt.n != g.n:
        raise GraphError(f"meeting-time table has n={mt.n}, graph has n={g.n}")

    k = g.degrees.astype(np.float64)
    adjacency = g.adjacency_matrix().tocoo()
    hops = np.bincount(adjacency.row, weights=mt.tau[adjacency.row, adjacency.col], minlength=g.n)
    tau_x = 1.0 + hops / k

    target = k.sum() ** 2
    identity_error = abs(float(np.dot(k * k, tau_x)) - target) / target
    if identity_error > identity_tolerance:
        logger.error(f"Remeeting identity off by {identity_error:.2e} relative on n={g.n}")
        raise IdentityViolationError(
            f"sum k^2 tau_x deviates from (n mu1)^2 by {identity_error:.2e} relative "
            f"(limit {identity_tolerance:.0e}); tighten the solver tolerance"
        )

    tau_x.flags.writeable = False
    p_x = reciprocal_degree_weights(g)
    p_x.flags.writeable = False
    return CoalescenceSummary(
        n=g.n,
        mu1=float(k.mean()),
        degrees=g.degrees,
        tau_x=tau_x,
        p_x=p_x,
        identity_error=identity_error,
    )


def fixation_coefficients(summary: CoalescenceSummary) -> Tuple[float, float]:
    """
    Weak-selection coefficients (A, B) with rho = 1/n + delta/(2n) (b B - c A).

    A = sum_x k_x tau_x / (n mu1) - 2 and B = sum_x k_x tau_x p_x / (n mu1) - 2.
    """
    weighted = summary.degrees * summary.tau_x / summary.total_degree
    return float(weighted.sum() - 2.0), float(np.dot(weighted, summary.p_x) - 2.0)


def fixation_probability_exact(
    g: Graph, summary: CoalescenceSummary, b: float, c: float, delta: float
) -> float:
    """First-order fixation probability of a single cooperator at a uniformly random node"""
    if summary.n != g.n:
        raise GraphError(f"summary has n={summary.n}, graph has n={g.n}")
    if delta == 0:
        return 1.0 / g.n
    cost_coefficient, benefit_coefficient = fixation_coefficients(summary)
    return 1.0 / g.n + delta / (2.0 * g.n) * (b * benefit_coefficient - c * cost_coefficient)


def critical_ratio_exact(g: Graph, summary: CoalescenceSummary) -> CriticalRatio:
    """b* = (sum tau_x k_x - 2 n mu1) / (sum tau_x k_x p_x - 2 n mu1)"""
    if summary.n != g.n:
        raise GraphError(f"summary has n={summary.n}, graph has n={g.n}")
    weighted = summary.degrees * summary.tau_x
    total = summary.total_degree
    return CriticalRatio(
        numerator=float(weighted.sum() - 2.0 * total),
        denominator=float(np.dot(weighted, summary.p_x) - 2.0 * total),
        scale=total,
    )


def structure_coefficient(bstar: CriticalRatio) -> float:
    """sigma = (b* + 1) / (b* - 1); PoleError at a pole or at b* = 1"""
    return sigma_from_ratio(bstar)


def selection_condition(game: GameMatrix, sigma: float) -> bool:
    """C is favored over D iff (R - P) sigma > T - S"""
    if not np.isfinite(sigma):
        raise ValueError(f"sigma must be finite, got {sigma}")
    return (game.R - game.P) * sigma > game.T - game.S


@dataclass(frozen=True, eq=False)
class CoalescenceReport:
    """Everything the exact pipeline produces for one graph"""
    meeting_times: MeetingTimes
    summary: CoalescenceSummary
    ratio: CriticalRatio
    sigma: Optional[float] = field(default=None)


def coalescence_report(
    g: Graph,
    tolerance: float = Config.SOLVER_TOLERANCE,
    max_sweeps: int = Config.SOLVER_MAX_SWEEPS,
    method: str = Config.SOLVER_METHOD,
) -> CoalescenceReport:
    """Solve meeting times and derive remeeting times, b* and sigma in one call"""
    mt = meeting_times(g, tolerance=tolerance, max_sweeps=max_sweeps, method=method)
    summary = remeeting_times(g, mt)
    ratio = critical_ratio_exact(g, summary)
    try:
        sigma = structure_coefficient(ratio)
    except PoleError:
        sigma = None
    return CoalescenceReport(meeting_times=mt, summary=summary, ratio=ratio, sigma=sigma)
