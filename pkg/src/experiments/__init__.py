"""
Experiment drivers: configuration, sweeps, reports and result files
"""
from .settings import (
    ExperimentKind,
    ExperimentConfig,
    KIND_DEFAULTS,
    read_config_file,
    load_experiment_config,
)
from .records import SweepRecord
from .workers import GraphJob, evaluate_graph_job, run_jobs
from .output import (
    default_output_path,
    resolve_output_path,
    records_frame,
    write_records_csv,
    read_records_csv,
    write_summary_json,
)
from .sweeps import (
    ExperimentResult,
    run_sweep_n,
    run_sweep_p_er,
    run_sweep_q_sbm,
    run_families_histogram,
    run_experiment,
)
from .reports import (
    DISAGREEMENT_STD_ERRORS,
    AnalysisReport,
    SimulationReport,
    analyze_graph,
    analyze_file,
    simulation_graph,
    simulate,
)

__all__ = [
    'ExperimentKind',
    'ExperimentConfig',
    'KIND_DEFAULTS',
    'read_config_file',
    'load_experiment_config',
    'SweepRecord',
    'GraphJob',
    'evaluate_graph_job',
    'run_jobs',
    'default_output_path',
    'resolve_output_path',
    'records_frame',
    'write_records_csv',
    'read_records_csv',
    'write_summary_json',
    'ExperimentResult',
    'run_sweep_n',
    'run_sweep_p_er',
    'run_sweep_q_sbm',
    'run_families_histogram',
    'run_experiment',
    'DISAGREEMENT_STD_ERRORS',
    'AnalysisReport',
    'SimulationReport',
    'analyze_graph',
    'analyze_file',
    'simulation_graph',
    'simulate',
]
