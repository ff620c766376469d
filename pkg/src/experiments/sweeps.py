"""
Parameter sweeps comparing exact and mean-field critical ratios
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from config import Config
from generators import Family, GeneratorSpec, sample_family_spec
from meanfield import bstar_small_q, q_hat
from utils import derive_seed, make_rng
from .output import records_frame, resolve_output_path, write_records_csv, write_summary_json
from .records import SweepRecord
from .settings import ExperimentConfig, ExperimentKind
from .workers import GraphJob, run_jobs

logger = logging.getLogger(__name__)


@dataclass
class ExperimentResult:
    """Records, aggregate summary and the files they were written to"""
    config: ExperimentConfig
    records: List[SweepRecord]
    summary: Dict[str, Any]
    csv_path: Optional[Path] = None
    json_path: Optional[Path] = None
    notes: List[str] = field(default_factory=list)

    def frame(self) -> pd.DataFrame:
        return records_frame(self.records)


def _job_seed(config: ExperimentConfig, point: int, replicate: int) -> int:
    return derive_seed(config.seed, config.kind.value, point, replicate)


def _counts(records: Sequence[SweepRecord]) -> Dict[str, int]:
    """Outcome counts; resamples are extra draws needed to get connected graphs"""
    return {
        'records': len(records),
        'ok': sum(r.ok for r in records),
        'failed': sum(r.status == 'failed' for r in records),
        'disconnected': sum(r.status == 'disconnected' for r in records),
        'resamples': sum(max(r.attempts - 1, 0) for r in records if r.status != 'disconnected'),
    }


def _ok_frame(records: Sequence[SweepRecord]) -> pd.DataFrame:
    frame = records_frame([r for r in records if r.ok])
    if frame.empty:
        return frame
    frame['ratio'] = pd.to_numeric(frame['ratio'])
    frame['relative_error'] = (frame['ratio'] - 1.0).abs()
    return frame


def _sign_changes(points: pd.Series, values: pd.Series) -> List[List[float]]:
    """Consecutive grid intervals over which values change sign"""
    brackets = []
    pairs = list(zip(points.tolist(), values.tolist()))
    for (x0, y0), (x1, y1) in zip(pairs[:-1], pairs[1:]):
        if np.isfinite(y0) and np.isfinite(y1) and y0 * y1 < 0:
            brackets.append([x0, x1])
    return brackets


def _extrapolate_to_zero(points: pd.Series, values: pd.Series, count: int) -> Dict[str, Any]:
    """Straight-line fit through the lowest `count` finite grid points, evaluated at 0"""
    pairs = [(x, y) for x, y in zip(points.tolist(), values.tolist()) if np.isfinite(y)][:count]
    if not pairs:
        return {}
    xs = [x for x, _ in pairs]
    if len(set(xs)) < 2:
        return {'measured_intercept': float(pairs[0][1]), 'intercept_fit_q': xs}
    slope, intercept = np.polyfit(xs, [y for _, y in pairs], 1)
    return {'measured_intercept': float(intercept), 'intercept_slope': float(slope), 'intercept_fit_q': xs}


def _finish(config: ExperimentConfig, records: List[SweepRecord], summary: Dict[str, Any],
            notes: Optional[List[str]] = None, write: bool = True) -> ExperimentResult:
    counts = _counts(records)
    summary = {'aggregates': summary, 'counts': counts}
    result = ExperimentResult(config=config, records=records, summary=summary, notes=list(notes or []))
    logger.info(
        f"{config.kind.value}: {counts['ok']}/{counts['records']} ok, {counts['failed']} failed, "
        f"{counts['disconnected']} disconnected, {counts['resamples']} resamples"
    )
    if write:
        csv_path = resolve_output_path(config)
        result.csv_path = write_records_csv(records, config, csv_path, notes=result.notes)
        result.json_path = write_summary_json(summary, config, csv_path.with_suffix('.json'))
    return result


def run_sweep_n(config: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """Block-model accuracy versus network size: exact b* against the closed form"""
    jobs = []
    for point, n_value in enumerate(config.grid):
        n = int(n_value)
        params = {'N': n, 'm': config.m, 'p': config.p, 'q': config.q}
        for replicate in range(config.replicates):
            spec = GeneratorSpec(
                family=Family.SBM,
                params={'n': n, 'm': config.m, 'p': config.p, 'q': config.q},
                seed=_job_seed(config, point, replicate),
            )
            jobs.append(GraphJob(
                experiment=config.kind.value, point_index=point, replicate=replicate, spec=spec,
                mean_field='sbm', params=params, method=config.method,
                tolerance=config.tolerance, connect_attempts=config.connect_attempts,
            ))

    records = run_jobs(jobs, config.threads, desc='sweep-n')
    frame = _ok_frame(records)
    points = []
    if not frame.empty:
        grouped = frame.groupby('N', sort=True)
        for n, group in grouped:
            points.append({
                'N': int(n),
                'replicates_ok': int(len(group)),
                'mean_relative_error': float(group['relative_error'].mean()),
                'max_relative_error': float(group['relative_error'].max()),
            })
    return _finish(config, records, {'points': points}, write=write)


def run_sweep_p_er(config: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """Erdos-Renyi sweep over p: exact and mean-field 1/b*"""
    jobs = []
    for point, p in enumerate(config.grid):
        params = {'N': config.n, 'p': p}
        for replicate in range(config.replicates):
            spec = GeneratorSpec(
                family=Family.ER,
                params={'n': config.n, 'p': p},
                seed=_job_seed(config, point, replicate),
            )
            jobs.append(GraphJob(
                experiment=config.kind.value, point_index=point, replicate=replicate, spec=spec,
                mean_field='er', params=params, method=config.method,
                tolerance=config.tolerance, connect_attempts=config.connect_attempts,
            ))

    records = run_jobs(jobs, config.threads, desc='sweep-p-er')
    frame = _ok_frame(records)
    points, brackets = [], []
    if not frame.empty:
        means = frame.groupby('p', sort=True).agg(
            exact_reciprocal=('exact_reciprocal', 'mean'),
            mf_reciprocal=('mf_reciprocal', 'mean'),
            replicates_ok=('replicate', 'count'),
        ).reset_index()
        means['abs_difference'] = (means['exact_reciprocal'] - means['mf_reciprocal']).abs()
        points = means.to_dict(orient='records')
        brackets = _sign_changes(means['p'], means['exact_reciprocal'])
    return _finish(config, records, {'points': points, 'exact_sign_changes': brackets}, write=write)


def run_sweep_q_sbm(config: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """Block-model sweep over q for each group count: 1/b*, q-hat and small-q intercept"""
    jobs = []
    references = {}
    point = 0
    for m in config.m_values:
        threshold = q_hat(m, config.p, config.n)
        intercept = bstar_small_q(config.n, m, config.p)
        references[m] = {
            'q_hat_expansion': threshold.expansion,
            'q_hat_exact': threshold.exact_root,
            'small_q_reciprocal': intercept.reciprocal,
        }
        for q in config.grid:
            params = {'N': config.n, 'm': m, 'p': config.p, 'q': q}
            params.update(references[m])
            for replicate in range(config.replicates):
                spec = GeneratorSpec(
                    family=Family.SBM,
                    params={'n': config.n, 'm': m, 'p': config.p, 'q': q},
                    seed=_job_seed(config, point, replicate),
                )
                jobs.append(GraphJob(
                    experiment=config.kind.value, point_index=point, replicate=replicate, spec=spec,
                    mean_field='sbm', params=params, method=config.method,
                    tolerance=config.tolerance, connect_attempts=config.connect_attempts,
                ))
            point += 1

    records = run_jobs(jobs, config.threads, desc='sweep-q-sbm')
    frame = _ok_frame(records)
    per_m = []
    for m in config.m_values:
        entry: Dict[str, Any] = {'m': m, **references[m]}
        subset = frame[frame['m'] == m] if not frame.empty else frame
        if not subset.empty:
            means = subset.groupby('q', sort=True).agg(
                exact_reciprocal=('exact_reciprocal', 'mean'),
                mf_reciprocal=('mf_reciprocal', 'mean'),
            ).reset_index()
            entry['exact_sign_changes'] = _sign_changes(means['q'], means['exact_reciprocal'])
            entry.update(
                _extrapolate_to_zero(means['q'], means['exact_reciprocal'], Config.SMALL_Q_FIT_POINTS)
            )
            entry['points'] = means.to_dict(orient='records')
        per_m.append(entry)
    return _finish(config, records, {'groups': per_m}, write=write)


def run_families_histogram(config: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """Mean-field over exact b* on networks sampled from every family"""
    jobs = []
    for point, family in enumerate(config.families):
        for replicate in range(config.replicates):
            rng = make_rng(config.seed, config.kind.value, point, replicate)
            n = int(rng.integers(config.min_n, config.max_n + 1))
            spec = sample_family_spec(family, rng, n=n)
            params = {'family': family.value}
            params.update({k: v for k, v in spec.params.items() if k != 'n'})
            jobs.append(GraphJob(
                experiment=config.kind.value, point_index=point, replicate=replicate, spec=spec,
                mean_field='moments', params=params, method=config.method,
                tolerance=config.tolerance, connect_attempts=config.connect_attempts,
            ))

    records = run_jobs(jobs, config.threads, desc='families')
    frame = _ok_frame(records)
    families = []
    overall_within = None
    if not frame.empty:
        with_ratio = frame.dropna(subset=['ratio'])
        for family, group in with_ratio.groupby('family', sort=False):
            ratios = group['ratio']
            families.append({
                'family': family,
                'networks': int(len(ratios)),
                'median_ratio': float(ratios.median()),
                'within_20_percent': float(ratios.between(0.8, 1.2).mean()),
            })
        if not with_ratio.empty:
            overall_within = float(with_ratio['ratio'].between(0.8, 1.2).mean())

    failures = {}
    for point, family in enumerate(config.families):
        lost = [r for r in records if r.point_index == point and not r.ok]
        failures[family.value] = len(lost)

    notes = [f"network sizes drawn from [{config.min_n}, {config.max_n}]"]
    summary = {'families': families, 'overall_within_20_percent': overall_within, 'failures_by_family': failures}
    return _finish(config, records, summary, notes=notes, write=write)


SWEEPS = {
    ExperimentKind.SWEEP_N: run_sweep_n,
    ExperimentKind.SWEEP_P_ER: run_sweep_p_er,
    ExperimentKind.SWEEP_Q_SBM: run_sweep_q_sbm,
    ExperimentKind.FAMILIES: run_families_histogram,
}


def run_experiment(config: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """Dispatch a sweep-type configuration"""
    try:
        runner = SWEEPS[config.kind]
    except KeyError:
        raise ValueError(f"{config.kind.value} is not a sweep experiment")
    return runner(config, write=write)
