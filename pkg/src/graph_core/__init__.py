"""
Graph representation module for coopgraph
"""
from .graph import (
    Graph,
    DegreeMoments,
    from_edge_list,
    degree_moments,
    reciprocal_degree_weight,
    reciprocal_degree_weights,
    sum_k_p,
    component_sizes,
    is_connected,
)
from .edge_list import (
    parse_edge_list,
    format_edge_list,
    read_edge_list_file,
    write_edge_list_file,
)

__all__ = [
    'Graph',
    'DegreeMoments',
    'from_edge_list',
    'degree_moments',
    'reciprocal_degree_weight',
    'reciprocal_degree_weights',
    'sum_k_p',
    'component_sizes',
    'is_connected',
    'parse_edge_list',
    'format_edge_list',
    'read_edge_list_file',
    'write_edge_list_file',
]
