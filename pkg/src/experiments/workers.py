"""
Independent (point, replicate) jobs and their scheduling
"""
import logging
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Any, Dict, Iterable, List

from tqdm import tqdm

from coalescence import coalescence_report
from config import Config
from errors import ConnectionAttemptsExhausted, CoopGraphError, GeneratorError
from generators import GeneratorSpec, draw_connected
from graph_core import degree_moments
from meanfield import critical_ratio_er, critical_ratio_mf, critical_ratio_sbm
from .records import SweepRecord

logger = logging.getLogger(__name__)

MEAN_FIELD_MODES = ('sbm', 'er', 'moments')


@dataclass(frozen=True)
class GraphJob:
    """
    Draw one connected network and compare exact and mean-field b*.

    mean_field selects the closed form: 'sbm' and 'er' use the generator
    parameters alone, 'moments' uses the drawn graph's degree moments.
    """
    experiment: str
    point_index: int
    replicate: int
    spec: GeneratorSpec
    mean_field: str = 'moments'
    params: Dict[str, Any] = field(default_factory=dict)
    method: str = Config.SOLVER_METHOD
    tolerance: float = Config.SOLVER_TOLERANCE
    connect_attempts: int = Config.CONNECT_MAX_ATTEMPTS


def evaluate_graph_job(job: GraphJob) -> SweepRecord:
    """Run one job; failures become records instead of exceptions"""
    record = SweepRecord(
        experiment=job.experiment,
        point_index=job.point_index,
        replicate=job.replicate,
        params=dict(job.params),
        seed=job.spec.seed,
    )
    try:
        g, attempts = draw_connected(job.spec, job.connect_attempts)
    except ConnectionAttemptsExhausted as e:
        logger.warning(f"{job.experiment} point {job.point_index} replicate {job.replicate}: {e}")
        return record.model_copy(update={
            'status': 'disconnected', 'error': str(e), 'attempts': job.connect_attempts,
        })
    except GeneratorError as e:
        logger.warning(f"{job.experiment} point {job.point_index} replicate {job.replicate}: {e}")
        return record.model_copy(update={'status': 'failed', 'error': str(e)})

    record = record.model_copy(update={'attempts': attempts, 'n': g.n})
    try:
        report = coalescence_report(g, tolerance=job.tolerance, method=job.method)
        if job.mean_field == 'sbm':
            mean_field = critical_ratio_sbm(job.spec.sbm_params())
        elif job.mean_field == 'er':
            mean_field = critical_ratio_er(job.spec.params['n'], job.spec.params['p'])
        else:
            mean_field = critical_ratio_mf(degree_moments(g))
    except CoopGraphError as e:
        logger.warning(
            f"{job.experiment} point {job.point_index} replicate {job.replicate} failed: {e}"
        )
        return record.model_copy(update={'status': 'failed', 'error': str(e)})

    return record.with_ratios(report.ratio, mean_field)


def run_jobs(jobs: Iterable[GraphJob], threads: int = 1, desc: str = 'networks') -> List[SweepRecord]:
    """
    Evaluate jobs on `threads` processes and return records sorted by
    (point index, replicate), so the output never depends on scheduling.
    """
    jobs = list(jobs)
    records: List[SweepRecord] = []
    with tqdm(total=len(jobs), desc=desc, unit='graph', leave=False) as progress:
        if threads > 1 and len(jobs) > 1:
            with Pool(processes=threads) as pool:
                for record in pool.imap_unordered(evaluate_graph_job, jobs):
                    records.append(record)
                    progress.update()
        else:
            for job in jobs:
                records.append(evaluate_graph_job(job))
                progress.update()
    records.sort(key=lambda r: r.sort_key)
    return records
