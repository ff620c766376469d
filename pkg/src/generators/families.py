"""
Parameter distributions for the cross-family validation experiment
"""
import logging
from typing import Callable, Dict, Optional

import numpy as np

from config import Config
from .spec import Family, GeneratorSpec

logger = logging.getLogger(__name__)

MIN_SPATIAL_RC = 1e-3

ParamSampler = Callable[[np.random.Generator], Dict[str, float]]


def _sbm(rng: np.random.Generator) -> Dict[str, float]:
    p = rng.uniform(0.1, 1.0)
    return {'m': int(rng.integers(2, 6)), 'p': p, 'q': rng.uniform(0.01, p)}


def _spatial(rng: np.random.Generator) -> Dict[str, float]:
    # r_c ~ U(0, 0.2]; tiny radii make every draw a star-like tree
    r_c = 0.2 - rng.uniform(0.0, 0.2)
    return {'links_per_node': int(rng.integers(1, 6)), 'r_c': max(r_c, MIN_SPATIAL_RC)}


FAMILY_SAMPLERS: Dict[Family, ParamSampler] = {
    Family.SBM: _sbm,
    Family.ER: lambda rng: {'p': rng.uniform(0.2, 1.0)},
    Family.SMALL_WORLD: lambda rng: {
        'lattice_degree': int(rng.choice([4, 8, 12])),
        'p_add': rng.uniform(0.0, 0.1),
    },
    Family.PA_SHIFTED: lambda rng: {
        'links_per_node': int(rng.integers(1, 6)),
        'attractiveness': rng.uniform(0.0, 5.0),
    },
    Family.PA_SUPERLINEAR: lambda rng: {
        'links_per_node': int(rng.integers(1, 5)),
        'theta': rng.uniform(0.0, 3.0),
    },
    Family.HOLME_KIM: lambda rng: {
        'links_per_node': int(rng.integers(1, 6)),
        'p_triad': rng.uniform(0.0, 1.0),
    },
    Family.KLEMM_EGUILUZ: lambda rng: {
        'links_per_node': int(rng.integers(1, 6)),
        'crossover': rng.uniform(0.0, 1.0),
    },
    Family.SPATIAL_SF: _spatial,
    Family.UCM: lambda rng: {
        'k_min': int(rng.integers(1, 6)),
        'gamma': rng.uniform(1.0, 4.0),
    },
}


def sample_family_spec(
    family: Family,
    rng: np.random.Generator,
    n: Optional[int] = None,
    seed: Optional[int] = None,
) -> GeneratorSpec:
    """
    Draw a GeneratorSpec for one network of the given family.

    Args:
        family: Graph family
        rng: Stream used for the size and the family parameters
        n: Fixed size; drawn uniformly from the configured range when None
        seed: Seed for the graph itself; drawn from rng when None
    """
    if n is None:
        n = int(rng.integers(Config.FAMILIES_MIN_N, Config.FAMILIES_MAX_N + 1))
    params = {'n': n}
    params.update(FAMILY_SAMPLERS[family](rng))
    if seed is None:
        seed = int(rng.integers(0, 2 ** 64, dtype=np.uint64))
    return GeneratorSpec(family=family, params=params, seed=seed)
