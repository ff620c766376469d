"""
Seeded random-graph generators
"""
from .spec import Family, GeneratorSpec, SbmParams
from .random_graphs import gen_er, gen_sbm, gen_small_world
from .growth import (
    gen_pa_shifted,
    gen_pa_superlinear,
    gen_holme_kim,
    gen_klemm_eguiluz,
    gen_spatial_sf,
)
from .configuration import gen_ucm, sample_degree_sequence, truncated_power_law
from .connect import generate, draw_connected, ensure_connected
from .families import FAMILY_SAMPLERS, sample_family_spec

__all__ = [
    'Family',
    'GeneratorSpec',
    'SbmParams',
    'gen_er',
    'gen_sbm',
    'gen_small_world',
    'gen_pa_shifted',
    'gen_pa_superlinear',
    'gen_holme_kim',
    'gen_klemm_eguiluz',
    'gen_spatial_sf',
    'gen_ucm',
    'sample_degree_sequence',
    'truncated_power_law',
    'generate',
    'draw_connected',
    'ensure_connected',
    'FAMILY_SAMPLERS',
    'sample_family_spec',
]
