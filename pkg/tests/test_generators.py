from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest
from pydantic import ValidationError

from errors import ConnectionAttemptsExhausted, GeneratorError
from generators import (
    FAMILY_SAMPLERS,
    Family,
    GeneratorSpec,
    SbmParams,
    draw_connected,
    ensure_connected,
    gen_er,
    gen_holme_kim,
    gen_klemm_eguiluz,
    gen_pa_shifted,
    gen_pa_superlinear,
    gen_sbm,
    gen_small_world,
    gen_spatial_sf,
    gen_ucm,
    generate,
    sample_degree_sequence,
    sample_family_spec,
    truncated_power_law,
)
from graph_core import component_sizes, degree_moments, is_connected
from utils import derive_seed, make_rng


def _seeds(label: str, count: int):
    return [derive_seed(label, i) for i in range(count)]


def test_derive_seed_is_stable_and_distinct() -> None:
    assert derive_seed(7, 'sweep-n', 0, 1) == derive_seed(7, 'sweep-n', 0, 1)
    assert derive_seed(7, 'sweep-n', 0, 1) != derive_seed(7, 'sweep-n', 1, 0)
    assert derive_seed(7, 1) != derive_seed(7, '1')
    assert 0 <= derive_seed(2 ** 64 - 1, 'x') < 2 ** 64
    assert make_rng(5).random() == make_rng(5).random()


def test_er_limits() -> None:
    assert gen_er(10, 1.0, seed=1).edge_count == 45
    assert gen_er(10, 0.0, seed=1).edge_count == 0
    with pytest.raises(GeneratorError):
        gen_er(10, 1.5, seed=1)


def test_er_mean_degree() -> None:
    means = [degree_moments(gen_er(100, 0.5, seed)).mu1 for seed in _seeds('er', 100)]
    standard_error = np.std(means, ddof=1) / math.sqrt(len(means))
    assert abs(np.mean(means) - 49.5) < 3 * standard_error + 1e-9


def test_sbm_single_group_matches_er_draw() -> None:
    params = SbmParams(n=100, m=1, p=0.3, q=0.3)
    assert gen_sbm(params, seed=11) == gen_er(100, 0.3, seed=11)


def test_sbm_without_cross_links_splits_into_cliques() -> None:
    g = gen_sbm(SbmParams(n=60, m=3, p=1.0, q=0.0), seed=2)
    assert component_sizes(g) == [20, 20, 20]
    assert g.edge_count == 3 * 190


def test_sbm_mean_degree() -> None:
    params = SbmParams(n=100, m=3, p=0.7, q=0.1)
    means = [degree_moments(gen_sbm(params, seed)).mu1 for seed in _seeds('sbm', 100)]
    standard_error = np.std(means, ddof=1) / math.sqrt(len(means))
    assert abs(np.mean(means) - 29.7) < 3 * standard_error + 1e-9


def test_sbm_params_reject_more_groups_than_nodes() -> None:
    with pytest.raises(ValidationError):
        SbmParams(n=3, m=4, p=0.5, q=0.1)


def test_small_world_lattice() -> None:
    g = gen_small_world(20, 4, 0.0, seed=0)
    assert set(g.degrees.tolist()) == {4}
    moments = degree_moments(g)
    assert (moments.mu1, moments.mu2) == (4.0, 16.0)


def test_small_world_shortcut_count() -> None:
    means = [degree_moments(gen_small_world(200, 8, 0.05, seed)).mu1 for seed in _seeds('sw', 100)]
    standard_error = np.std(means, ddof=1) / math.sqrt(len(means))
    assert abs(np.mean(means) - 8.4) < 3 * standard_error + 1e-9


def test_small_world_rejects_odd_degree() -> None:
    with pytest.raises(GeneratorError):
        gen_small_world(20, 3, 0.1, seed=0)


def test_growth_edge_count_accounting() -> None:
    n, m = 300, 2
    expected = m * (m + 1) // 2 + m * (n - m - 1)
    assert gen_pa_shifted(n, m, 1.0, seed=1).edge_count == expected
    assert gen_pa_superlinear(n, m, 1.5, seed=1).edge_count == expected
    assert gen_holme_kim(n, m, 0.5, seed=1).edge_count == expected
    assert gen_klemm_eguiluz(n, m, 0.3, seed=1).edge_count == expected
    assert gen_spatial_sf(n, m, 0.1, seed=1).edge_count == expected


def test_single_link_growth_builds_trees() -> None:
    for g in (gen_pa_shifted(200, 1, 0.0, seed=4), gen_holme_kim(200, 1, 0.9, seed=4)):
        assert g.edge_count == 199
        assert is_connected(g)


def test_pa_mean_degree_near_twice_links() -> None:
    g = gen_pa_shifted(500, 3, 0.0, seed=8)
    assert abs(degree_moments(g).mu1 - 6.0) < 0.2


def test_superlinear_kernel_condenses() -> None:
    hubs = [gen_pa_superlinear(300, 2, 2.5, seed).degrees.max() > 100 for seed in _seeds('super', 20)]
    assert np.mean(hubs) >= 0.5


def test_growth_parameter_ranges() -> None:
    with pytest.raises(GeneratorError):
        gen_pa_shifted(50, 6, 1.0, seed=0)
    with pytest.raises(GeneratorError):
        gen_pa_superlinear(50, 2, 3.5, seed=0)
    with pytest.raises(GeneratorError):
        gen_holme_kim(50, 2, 1.5, seed=0)
    with pytest.raises(GeneratorError):
        gen_spatial_sf(50, 2, 0.0, seed=0)


def _clustering(g) -> float:
    return nx.average_clustering(g.to_networkx())


def test_triad_formation_raises_clustering() -> None:
    seeds = _seeds('hk', 10)
    high = [_clustering(gen_holme_kim(300, 3, 1.0, s)) for s in seeds]
    low = [_clustering(gen_holme_kim(300, 3, 0.0, s)) for s in seeds]
    assert np.mean(high) > np.mean(low)


def test_klemm_eguiluz_without_crossover_is_clustered() -> None:
    seeds = _seeds('ke', 10)
    local = [_clustering(gen_klemm_eguiluz(300, 3, 0.0, s)) for s in seeds]
    mixed = [_clustering(gen_klemm_eguiluz(300, 3, 1.0, s)) for s in seeds]
    assert np.mean(local) > np.mean(mixed)


def _mean_edge_length(g) -> float:
    positions = np.asarray(g.positions)
    edges = np.asarray(g.edges())
    return float(np.linalg.norm(positions[edges[:, 0]] - positions[edges[:, 1]], axis=1).mean())


def test_spatial_radius_shortens_edges() -> None:
    seeds = _seeds('spatial', 10)
    short = [_mean_edge_length(gen_spatial_sf(300, 2, 0.05, s)) for s in seeds]
    long = [_mean_edge_length(gen_spatial_sf(300, 2, 0.2, s)) for s in seeds]
    assert np.mean(short) < np.mean(long)


def test_spatial_positions_in_unit_square() -> None:
    g = gen_spatial_sf(100, 2, 0.1, seed=3)
    positions = np.asarray(g.positions)
    assert positions.shape == (100, 2)
    assert positions.min() >= 0.0 and positions.max() < 1.0


def test_ucm_respects_structural_cutoff() -> None:
    g = gen_ucm(400, 4.0, 2, seed=5)
    assert g.degrees.max() <= 20


def test_degree_sequence_sum_is_even() -> None:
    rng = make_rng(9)
    for _ in range(50):
        degrees = sample_degree_sequence(101, 2.5, 1, rng)
        assert degrees.sum() % 2 == 0
        assert degrees.min() >= 1 and degrees.max() <= 10


def test_degree_sequence_cutoff_below_minimum() -> None:
    with pytest.raises(GeneratorError):
        sample_degree_sequence(16, 2.5, 5, make_rng(0))


def test_ucm_raises_when_wiring_restarts_run_out() -> None:
    with pytest.raises(GeneratorError, match="no simple wiring"):
        gen_ucm(200, 2.5, 2, seed=7, retry_budget=0, max_restarts=1)


def test_ucm_wiring_is_always_simple() -> None:
    for seed in _seeds('ucm-simple', 10):
        g = gen_ucm(100, 1.5, 3, seed)
        edges = g.edges()
        assert len(set(edges)) == len(edges)
        assert all(u != v for u, v in edges)


def test_ucm_mean_degree_matches_truncated_power_law() -> None:
    ks, probs = truncated_power_law(2.5, 2, 20)
    analytic = float(np.dot(ks, probs))
    means = [degree_moments(gen_ucm(400, 2.5, 2, seed)).mu1 for seed in _seeds('ucm', 100)]
    standard_error = np.std(means, ddof=1) / math.sqrt(len(means))
    assert abs(np.mean(means) - analytic) < 3 * standard_error + 1e-9


def test_spec_validation() -> None:
    spec = GeneratorSpec(family='ER', params={'n': 50, 'p': 0.5}, seed=3)
    assert isinstance(spec.params['n'], int)
    with pytest.raises(ValidationError):
        GeneratorSpec(family=Family.ER, params={'n': 50})
    with pytest.raises(ValidationError):
        GeneratorSpec(family=Family.ER, params={'n': 50, 'p': 1.2})
    with pytest.raises(ValidationError):
        GeneratorSpec(family=Family.SMALL_WORLD, params={'n': 50, 'lattice_degree': 5, 'p_add': 0.1})
    with pytest.raises(ValidationError):
        GeneratorSpec(family=Family.ER, params={'n': 50, 'p': 0.5, 'q': 0.1})


def test_spec_flat_form() -> None:
    spec = GeneratorSpec(family=Family.SBM, params={'n': 60, 'm': 3, 'p': 0.5, 'q': 0.1}, seed=12)
    flat = spec.to_flat()
    assert flat['family'] == 'SBM'
    assert GeneratorSpec.from_flat(flat) == spec


def test_generate_is_deterministic() -> None:
    for family in Family:
        spec = sample_family_spec(family, make_rng('determinism', family.value), n=60)
        assert generate(spec) == generate(spec)


def test_family_samplers_produce_valid_specs() -> None:
    assert set(FAMILY_SAMPLERS) == set(Family)
    rng = make_rng(21)
    for family in Family:
        for _ in range(5):
            spec = sample_family_spec(family, rng)
            assert 100 <= spec.params['n'] <= 500
            assert spec.family is family


def test_ensure_connected_dense_er() -> None:
    g, attempts = draw_connected(GeneratorSpec(family=Family.ER, params={'n': 50, 'p': 0.5}, seed=1))
    assert attempts == 1
    assert is_connected(g)


def test_ensure_connected_gives_up_on_disjoint_cliques() -> None:
    spec = GeneratorSpec(family=Family.SBM, params={'n': 60, 'm': 3, 'p': 1.0, 'q': 0.0}, seed=1)
    with pytest.raises(ConnectionAttemptsExhausted) as info:
        ensure_connected(spec, max_attempts=5)
    assert info.value.attempts == 5
    assert info.value.component_sizes == [20, 20, 20]


def test_sparse_block_model_connects_within_budget() -> None:
    for seed in _seeds('sparse-sbm', 20):
        spec = GeneratorSpec(family=Family.SBM, params={'n': 100, 'm': 2, 'p': 0.8, 'q': 0.01}, seed=seed)
        assert is_connected(ensure_connected(spec))
