"""
Single-graph reports: file analysis and Monte Carlo simulation
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union

from config import Config
from coalescence import CoalescenceReport, coalescence_report, fixation_probability_exact, selection_condition
from errors import ConfigError, DisconnectedGraphError
from evodyn import GameMatrix, TrialSummary, estimate_fixation
from generators import GeneratorSpec, ensure_connected
from graph_core import Graph, component_sizes, degree_moments, is_connected, read_edge_list_file
from meanfield import MeanFieldReport, mean_field_report
from oracle import exact_fixation_markov
from utils import derive_seed
from .settings import ExperimentConfig

logger = logging.getLogger(__name__)

# Monte Carlo and enumeration disagree when they differ by more than this many standard errors
DISAGREEMENT_STD_ERRORS = 4.0


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    """Exact (when small enough) and mean-field results for one graph"""
    source: str
    graph: Graph
    mean_field: MeanFieldReport
    exact: Optional[CoalescenceReport] = None
    game: Optional[GameMatrix] = None

    @property
    def sigma(self) -> Optional[float]:
        """Exact sigma when available, otherwise the mean-field value"""
        if self.exact is not None:
            return self.exact.sigma
        return self.mean_field.sigma_mf

    @property
    def verdict(self) -> Optional[bool]:
        """(R - P) sigma > T - S, or None without a game or a finite sigma"""
        if self.game is None or self.sigma is None:
            return None
        return selection_condition(self.game, self.sigma)

    def to_dict(self) -> Dict[str, Any]:
        moments = self.mean_field.moments
        result: Dict[str, Any] = {
            'source': self.source,
            'n': moments.n,
            'edges': self.graph.edge_count,
            'mu1': moments.mu1,
            'mu2': moments.mu2,
            'tau_mf': self.mean_field.tau_mf,
            'bstar_mf': self.mean_field.bstar_mf.value,
            'bstar_mf_regime': self.mean_field.bstar_mf.regime,
            'sigma_mf': self.mean_field.sigma_mf,
            'bstar_exact': None,
            'sigma_exact': None,
        }
        if self.exact is not None:
            result['bstar_exact'] = self.exact.ratio.value
            result['bstar_exact_regime'] = self.exact.ratio.regime
            result['sigma_exact'] = self.exact.sigma
            result['solver_method'] = self.exact.meeting_times.method
            result['solver_residual'] = self.exact.meeting_times.solver_residual
        if self.game is not None:
            result['game'] = self.game.model_dump()
            result['cooperation_favored'] = self.verdict
        return result


def analyze_graph(
    g: Graph,
    game: Optional[GameMatrix] = None,
    exact_max_n: int = Config.ANALYZE_EXACT_MAX_N,
    method: str = Config.SOLVER_METHOD,
    tolerance: float = Config.SOLVER_TOLERANCE,
    source: str = '<graph>',
) -> AnalysisReport:
    """Moments, mean-field and (for n <= exact_max_n) exact b* and sigma"""
    if not is_connected(g):
        raise DisconnectedGraphError(component_sizes(g), context=source)

    moments = degree_moments(g)
    mean_field = mean_field_report(moments)
    exact = None
    if g.n <= exact_max_n:
        exact = coalescence_report(g, tolerance=tolerance, method=method)
    else:
        logger.warning(f"{source}: n={g.n} above exact cap {exact_max_n}; reporting mean-field only")
    return AnalysisReport(source=source, graph=g, mean_field=mean_field, exact=exact, game=game)


def analyze_file(
    path: Union[str, Path],
    game: Optional[GameMatrix] = None,
    exact_max_n: int = Config.ANALYZE_EXACT_MAX_N,
    method: str = Config.SOLVER_METHOD,
    tolerance: float = Config.SOLVER_TOLERANCE,
) -> AnalysisReport:
    """
    Analyze a network stored as an edge-list file.

    Args:
        path: Edge-list file ('N M' header, then 'u v' lines)
        game: Optional 2x2 game for the selection verdict
        exact_max_n: Largest n for which meeting times are solved
        method: Meeting-time solver
        tolerance: Solver residual tolerance

    Returns:
        AnalysisReport

    Raises:
        DisconnectedGraphError: the file describes more than one component
        EdgeListFormatError: malformed file
    """
    g = read_edge_list_file(path)
    return analyze_graph(
        g, game=game, exact_max_n=exact_max_n, method=method, tolerance=tolerance, source=str(path)
    )


@dataclass(frozen=True, eq=False)
class SimulationReport:
    """Monte Carlo estimate with the exact references available for the graph"""
    graph: Graph
    game: GameMatrix
    delta: float
    placement: Union[int, str]
    trials: TrialSummary
    enumeration: Optional[float] = None
    first_order: Optional[float] = None

    @property
    def enumeration_difference(self) -> Optional[float]:
        if self.enumeration is None:
            return None
        return abs(self.trials.estimate - self.enumeration)

    @property
    def disagrees(self) -> Optional[bool]:
        """Enumeration outside DISAGREEMENT_STD_ERRORS standard errors of the estimate"""
        if self.enumeration is None:
            return None
        return not self.trials.within(self.enumeration, DISAGREEMENT_STD_ERRORS)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.graph.n,
            'delta': self.delta,
            'placement': self.placement,
            'game': self.game.model_dump(),
            'trials': self.trials.trials,
            'fixations_C': self.trials.fixations_C,
            'estimate': self.trials.estimate,
            'std_error': self.trials.std_error,
            'neutral': 1.0 / self.graph.n,
            'enumeration': self.enumeration,
            'enumeration_difference': self.enumeration_difference,
            'enumeration_disagrees': self.disagrees,
            'first_order': self.first_order,
        }


def simulation_graph(config: ExperimentConfig) -> Graph:
    """Graph from config.graph, or a connected draw from config.family"""
    if config.graph is not None:
        g = read_edge_list_file(config.graph)
        if not is_connected(g):
            raise DisconnectedGraphError(component_sizes(g), context=str(config.graph))
        return g
    if config.family is None:
        raise ConfigError("simulate needs either a graph file or a family with family_params")

    spec = GeneratorSpec(
        family=config.family,
        params=dict(config.family_params),
        seed=derive_seed(config.seed, config.kind.value, 'graph'),
    )
    return ensure_connected(spec, config.connect_attempts)


def simulate(config: ExperimentConfig, g: Optional[Graph] = None) -> SimulationReport:
    """
    Monte Carlo fixation estimate plus exact references.

    Enumeration is added when n <= Config.ORACLE_MAX_N. For uniform placement
    of a donation game the first-order prediction from remeeting times is added
    when n <= Config.ANALYZE_EXACT_MAX_N.
    """
    if g is None:
        g = simulation_graph(config)
    game = config.game()
    master_seed = derive_seed(config.seed, config.kind.value, 'trials')

    trials = estimate_fixation(
        g,
        game,
        config.delta,
        config.trials,
        placement=config.placement,
        master_seed=master_seed,
        workers=config.threads,
    )

    enumeration = None
    if g.n <= Config.ORACLE_MAX_N:
        solution = exact_fixation_markov(g, game, config.delta)
        if config.placement == 'uniform':
            enumeration = solution.uniform_average()
        else:
            enumeration = solution.single(int(config.placement))

    first_order = None
    is_donation = all(value is None for value in (config.R, config.S, config.T, config.P))
    if config.placement == 'uniform' and is_donation and g.n <= Config.ANALYZE_EXACT_MAX_N:
        report = coalescence_report(g, tolerance=config.tolerance, method=config.method)
        first_order = fixation_probability_exact(g, report.summary, config.b, config.c, config.delta)

    result = SimulationReport(
        graph=g,
        game=game,
        delta=config.delta,
        placement=config.placement,
        trials=trials,
        enumeration=enumeration,
        first_order=first_order,
    )
    if result.disagrees:
        logger.warning(
            f"Monte Carlo {trials.estimate:.5f} and enumeration {enumeration:.5f} differ by more than "
            f"{DISAGREEMENT_STD_ERRORS:g} standard errors ({trials.std_error:.5f})"
        )
    return result
