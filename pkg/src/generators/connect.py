"""
Family dispatch and connected-draw retries
"""
import logging
from typing import Callable, Dict, Tuple

from config import Config
from errors import ConnectionAttemptsExhausted, GeneratorError
from graph_core import Graph, component_sizes
from utils import derive_seed
from .configuration import gen_ucm
from .growth import (
    gen_holme_kim,
    gen_klemm_eguiluz,
    gen_pa_shifted,
    gen_pa_superlinear,
    gen_spatial_sf,
)
from .random_graphs import gen_er, gen_sbm, gen_small_world
from .spec import Family, GeneratorSpec

logger = logging.getLogger(__name__)


_BUILDERS: Dict[Family, Callable[[GeneratorSpec], Graph]] = {
    Family.SBM: lambda s: gen_sbm(s.sbm_params(), s.seed),
    Family.ER: lambda s: gen_er(s.params['n'], s.params['p'], s.seed),
    Family.SMALL_WORLD: lambda s: gen_small_world(
        s.params['n'], s.params['lattice_degree'], s.params['p_add'], s.seed
    ),
    Family.PA_SHIFTED: lambda s: gen_pa_shifted(
        s.params['n'], s.params['links_per_node'], s.params['attractiveness'], s.seed
    ),
    Family.PA_SUPERLINEAR: lambda s: gen_pa_superlinear(
        s.params['n'], s.params['links_per_node'], s.params['theta'], s.seed
    ),
    Family.HOLME_KIM: lambda s: gen_holme_kim(
        s.params['n'], s.params['links_per_node'], s.params['p_triad'], s.seed
    ),
    Family.KLEMM_EGUILUZ: lambda s: gen_klemm_eguiluz(
        s.params['n'], s.params['links_per_node'], s.params['crossover'], s.seed
    ),
    Family.SPATIAL_SF: lambda s: gen_spatial_sf(
        s.params['n'], s.params['links_per_node'], s.params['r_c'], s.seed
    ),
    Family.UCM: lambda s: gen_ucm(s.params['n'], s.params['gamma'], s.params['k_min'], s.seed),
}


def generate(spec: GeneratorSpec) -> Graph:
    """Draw one graph from the family named by spec, using spec.seed"""
    return _BUILDERS[spec.family](spec)


def draw_connected(
    spec: GeneratorSpec, max_attempts: int = Config.CONNECT_MAX_ATTEMPTS
) -> Tuple[Graph, int]:
    """
    Draw until the graph is connected.

    Attempt a uses the sub-seed derive_seed(spec.seed, a), so the outcome
    depends only on the spec.

    Returns:
        (graph, attempts used)

    Raises:
        ConnectionAttemptsExhausted: carrying the last attempt's component sizes
    """
    if max_attempts < 1:
        raise GeneratorError(f"max_attempts must be >= 1, got {max_attempts}")

    sizes = []
    for attempt in range(max_attempts):
        g = generate(spec.with_seed(derive_seed(spec.seed, attempt)))
        sizes = component_sizes(g)
        if len(sizes) == 1:
            if attempt:
                logger.debug(f"{spec.family.value}: connected after {attempt + 1} attempts")
            return g, attempt + 1

    logger.warning(f"{spec.family.value}: {max_attempts} draws, none connected")
    raise ConnectionAttemptsExhausted(spec.family.value, max_attempts, sizes)


def ensure_connected(spec: GeneratorSpec, max_attempts: int = Config.CONNECT_MAX_ATTEMPTS) -> Graph:
    """Connected draw from spec; see draw_connected"""
    g, _ = draw_connected(spec, max_attempts)
    return g
