from __future__ import annotations

import json

import pandas as pd
import pytest

from errors import ConfigError, DisconnectedGraphError
from evodyn import GameMatrix
from experiments import (
    ExperimentConfig,
    ExperimentKind,
    GraphJob,
    SweepRecord,
    analyze_file,
    default_output_path,
    evaluate_graph_job,
    load_experiment_config,
    read_records_csv,
    run_experiment,
    run_families_histogram,
    run_sweep_n,
    run_sweep_p_er,
    run_sweep_q_sbm,
    simulate,
)
from coalescence import CriticalRatio
from experiments.sweeps import _extrapolate_to_zero
from generators import Family, GeneratorSpec
from graph_core import write_edge_list_file


def test_config_precedence(tmp_path) -> None:
    path = tmp_path / 'run.yaml'
    path.write_text("# small run\nseed: 5\nreplicates: 3\nn: 40\n")
    config = load_experiment_config('sweep-p-er', path, replicates=2, threads=None)
    assert config.kind is ExperimentKind.SWEEP_P_ER
    assert (config.seed, config.replicates, config.n) == (5, 2, 40)
    assert config.grid[0] == 0.05 and config.grid[-1] == 1.0


def test_config_rejects_nested_sections(tmp_path) -> None:
    path = tmp_path / 'nested.yaml'
    path.write_text("solver:\n  method: cg\n")
    with pytest.raises(ConfigError):
        load_experiment_config('sweep-n', path)


def test_config_rejects_bad_grids() -> None:
    with pytest.raises(ConfigError):
        load_experiment_config('sweep-p-er', grid='0.0,0.5')
    with pytest.raises(ConfigError):
        load_experiment_config('sweep-n', grid='2,20')
    with pytest.raises(ConfigError):
        load_experiment_config('sweep-q-sbm', m_values='1')


def test_comma_separated_grid() -> None:
    config = load_experiment_config('sweep-n', grid='20,40', m=2)
    assert config.grid == [20.0, 40.0]


def test_echo_excludes_worker_count_and_output_path(tmp_path) -> None:
    one = ExperimentConfig.for_kind('sweep-n', threads=1, out=tmp_path / 'a.csv')
    four = ExperimentConfig.for_kind('sweep-n', threads=4, out=tmp_path / 'b.csv')
    assert one.echo() == four.echo()
    assert 'threads' not in one.echo() and 'out' not in one.echo()
    assert one.echo()['kind'] == 'sweep-n'


def test_config_game() -> None:
    assert ExperimentConfig.for_kind('simulate', b=5.0).game() == GameMatrix.donation(5.0, 1.0)
    explicit = ExperimentConfig.for_kind('simulate', R=3.0, S=0.0, T=5.0, P=1.0)
    assert explicit.game() == GameMatrix(R=3.0, S=0.0, T=5.0, P=1.0)
    with pytest.raises(ConfigError):
        ExperimentConfig.for_kind('simulate', R=3.0).game()


def test_default_output_path() -> None:
    assert default_output_path('sweep-n', 7).name == 'sweep-n-7.csv'


def test_sweep_record_ratio() -> None:
    record = SweepRecord(experiment='x', point_index=0, replicate=0, seed=1)
    filled = record.with_ratios(CriticalRatio(12.0, 2.0), CriticalRatio(15.0, 2.0))
    assert filled.ratio == pytest.approx(1.25)
    pole = record.with_ratios(CriticalRatio(12.0, 0.0), CriticalRatio(15.0, 2.0))
    assert pole.ratio is None
    assert pole.exact_pole


def _small_er(tmp_path, threads: int, name: str) -> ExperimentConfig:
    return load_experiment_config(
        'sweep-p-er', n=20, grid='0.3,0.6', replicates=2, seed=11, threads=threads, out=tmp_path / name
    )


def test_sweep_p_er_is_deterministic(tmp_path) -> None:
    first = run_sweep_p_er(_small_er(tmp_path, 1, 'a.csv'))
    second = run_sweep_p_er(_small_er(tmp_path, 2, 'b.csv'))
    assert first.csv_path.read_bytes() == second.csv_path.read_bytes()
    assert first.json_path.read_text() == second.json_path.read_text()

    frame = read_records_csv(first.csv_path)
    assert len(frame) == 4
    assert not [c for c in frame.columns if c.startswith('mc_')]
    assert list(frame[['point_index', 'replicate']].itertuples(index=False, name=None)) == [
        (0, 0), (0, 1), (1, 0), (1, 1)
    ]
    assert first.csv_path.read_text().startswith('# kind: sweep-p-er\n')

    summary = json.loads(first.json_path.read_text())
    assert summary['experiment'] == 'sweep-p-er'
    assert summary['counts']['records'] == 4
    assert len(summary['aggregates']['points']) == 2


def test_sweep_n_small(tmp_path) -> None:
    config = load_experiment_config('sweep-n', grid='20,40', m=2, replicates=2, seed=3)
    result = run_sweep_n(config, write=False)
    assert result.csv_path is None
    assert len(result.records) == 4
    assert {r.params['N'] for r in result.records} == {20, 40}
    points = result.summary['aggregates']['points']
    assert [p['N'] for p in points] == [20, 40][:len(points)]
    for point in points:
        assert point['max_relative_error'] >= point['mean_relative_error'] >= 0.0


def test_sweep_q_sbm_small() -> None:
    config = load_experiment_config(
        'sweep-q-sbm', n=30, p=0.8, m_values='2', grid='0.05,0.3', replicates=2, seed=4
    )
    result = run_sweep_q_sbm(config, write=False)
    assert len(result.records) == 4
    group = result.summary['aggregates']['groups'][0]
    assert group['m'] == 2
    assert 0.0 < group['q_hat_expansion'] < 1.0
    if len(group.get('points', [])) == 2:
        low, high = group['points']
        assert group['intercept_fit_q'] == [0.05, 0.3]
        slope = (high['exact_reciprocal'] - low['exact_reciprocal']) / 0.25
        assert group['intercept_slope'] == pytest.approx(slope)
        assert group['measured_intercept'] == pytest.approx(low['exact_reciprocal'] - 0.05 * slope)


def test_small_q_intercept_is_extrapolated() -> None:
    q = pd.Series([0.02, 0.04, 0.06, 0.5])
    values = pd.Series([0.007, 0.009, 0.011, -0.2])
    fit = _extrapolate_to_zero(q, values, 3)
    assert fit['measured_intercept'] == pytest.approx(0.005)
    assert fit['intercept_slope'] == pytest.approx(0.1)
    assert fit['intercept_fit_q'] == [0.02, 0.04, 0.06]
    assert _extrapolate_to_zero(q[:1], values[:1], 3) == {
        'measured_intercept': 0.007, 'intercept_fit_q': [0.02],
    }


def test_families_small() -> None:
    config = load_experiment_config(
        'families-histogram', families='ER,HolmeKim', replicates=2, min_n=30, max_n=40, seed=8
    )
    result = run_families_histogram(config, write=False)
    assert len(result.records) == 4
    assert all(30 <= r.n <= 40 for r in result.records if r.n is not None)
    aggregates = result.summary['aggregates']
    assert set(aggregates['failures_by_family']) == {'ER', 'HolmeKim'}
    assert any('network sizes' in note for note in result.notes)


def test_run_experiment_rejects_single_graph_kinds() -> None:
    with pytest.raises(ValueError):
        run_experiment(ExperimentConfig.for_kind('simulate'), write=False)


def test_analyze_complete_graph(tmp_path, k4) -> None:
    path = write_edge_list_file(k4, tmp_path / 'k4.txt')
    report = analyze_file(path, game=GameMatrix(R=3.0, S=0.0, T=5.0, P=1.0))
    assert report.exact.ratio.value == pytest.approx(-3.0)
    assert report.sigma == pytest.approx(0.5)
    assert report.verdict is False
    data = report.to_dict()
    assert data['bstar_mf'] == pytest.approx(-3.0)
    assert data['cooperation_favored'] is False


def test_analyze_ring(tmp_path, ring20) -> None:
    report = analyze_file(write_edge_list_file(ring20, tmp_path / 'ring.txt'))
    assert report.exact.ratio.value == pytest.approx(6.0)
    assert report.verdict is None


def test_analyze_mean_field_only_above_cap(tmp_path, k4) -> None:
    report = analyze_file(write_edge_list_file(k4, tmp_path / 'k4.txt'), exact_max_n=3)
    assert report.exact is None
    assert report.sigma == pytest.approx(0.5)
    assert report.to_dict()['bstar_exact'] is None


def test_analyze_refuses_disconnected(tmp_path, two_edges) -> None:
    path = write_edge_list_file(two_edges, tmp_path / 'split.txt')
    with pytest.raises(DisconnectedGraphError) as info:
        analyze_file(path)
    assert info.value.component_sizes == [2, 2]


def test_simulate_neutral_complete_graph(k4) -> None:
    config = ExperimentConfig.for_kind('simulate', trials=2000, delta=0.0, seed=1)
    report = simulate(config, g=k4)
    assert report.enumeration == pytest.approx(0.25)
    assert report.first_order == pytest.approx(0.25)
    assert report.trials.within(0.25, 4.0)
    assert report.to_dict()['neutral'] == 0.25


def test_simulate_from_family() -> None:
    config = ExperimentConfig.for_kind(
        'simulate', family='ER', family_params={'n': 10, 'p': 0.6}, trials=500, delta=0.01, b=4.0, seed=2
    )
    report = simulate(config)
    assert report.graph.n == 10
    assert report.trials.trials == 500
    assert report.enumeration is not None and report.first_order is not None
    assert not report.disagrees
    assert report.trials.within(report.enumeration, 4.0)
    assert report.first_order == pytest.approx(report.enumeration, abs=1e-3)


def test_simulate_needs_a_graph_source() -> None:
    with pytest.raises(ConfigError):
        simulate(ExperimentConfig.for_kind('simulate'))


def test_generator_failure_becomes_failed_record() -> None:
    spec = GeneratorSpec(family=Family.UCM, params={'n': 16, 'gamma': 2.5, 'k_min': 5}, seed=3)
    record = evaluate_graph_job(GraphJob(experiment='families', point_index=0, replicate=0, spec=spec))
    assert record.status == 'failed'
    assert 'structural cutoff' in record.error
    assert record.exact_value is None


@pytest.mark.slow
@pytest.mark.parametrize('kind, overrides', [
    ('sweep-p-er', {'n': 20, 'grid': '0.3,0.6', 'replicates': 4, 'seed': 11}),
    ('sweep-q-sbm', {'n': 30, 'p': 0.8, 'm_values': '2,3', 'grid': '0.05,0.3', 'replicates': 2, 'seed': 4}),
    ('families-histogram', {'families': 'ER,HolmeKim,UCM', 'replicates': 3, 'min_n': 30, 'max_n': 40, 'seed': 8}),
])
def test_outputs_identical_across_worker_counts(tmp_path, kind, overrides) -> None:
    results = [
        run_experiment(load_experiment_config(kind, threads=threads, out=tmp_path / f'{threads}.csv', **overrides))
        for threads in (1, 4, 8)
    ]
    for result in results[1:]:
        assert result.csv_path.read_bytes() == results[0].csv_path.read_bytes()
        assert result.json_path.read_text() == results[0].json_path.read_text()


@pytest.mark.slow
def test_block_model_accuracy_at_moderate_size() -> None:
    config = load_experiment_config('sweep-n', grid='60,100', replicates=5, seed=21)
    points = run_sweep_n(config, write=False).summary['aggregates']['points']
    assert [p['N'] for p in points] == [60, 100]
    for point in points:
        assert point['replicates_ok'] == 5
        assert point['mean_relative_error'] < 0.01


@pytest.mark.slow
def test_er_sign_change_straddles_one_half() -> None:
    config = load_experiment_config('sweep-p-er', n=100, grid='0.3,0.4,0.6,0.7', replicates=3, seed=22)
    aggregates = run_sweep_p_er(config, write=False).summary['aggregates']
    assert aggregates['exact_sign_changes'] == [[0.4, 0.6]]
    for point in aggregates['points']:
        assert point['abs_difference'] < 0.002


@pytest.mark.slow
def test_block_model_small_q_intercept() -> None:
    config = load_experiment_config(
        'sweep-q-sbm', n=100, p=0.8, m_values='2', grid='0.01,0.02,0.03', replicates=5, seed=23
    )
    group = run_sweep_q_sbm(config, write=False).summary['aggregates']['groups'][0]
    assert group['small_q_reciprocal'] == pytest.approx(0.0050, rel=0.05)
    assert group['intercept_fit_q'] == [0.01, 0.02, 0.03]
    assert group['measured_intercept'] == pytest.approx(0.0050, rel=0.1)
