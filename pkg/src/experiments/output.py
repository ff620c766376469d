"""
CSV and JSON writers for experiment results
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd
from slugify import slugify

from config import Config
from .records import SweepRecord
from .settings import ExperimentConfig

logger = logging.getLogger(__name__)

DESK_SCALE_NOTE = (
    "replicate counts are desk-scale; parameter distributions are unchanged"
)


def default_output_path(experiment: str, seed: int) -> Path:
    """Config.OUTPUT_DIR / <slug of experiment and seed>.csv"""
    return Config.OUTPUT_DIR / f"{slugify(f'{experiment} {seed}')}.csv"


def resolve_output_path(config: ExperimentConfig) -> Path:
    if config.out is not None:
        return Path(config.out)
    return default_output_path(config.kind.value, config.seed)


def records_frame(records: Sequence[SweepRecord]) -> pd.DataFrame:
    return pd.DataFrame([record.to_row() for record in records])


def write_records_csv(
    records: Sequence[SweepRecord],
    config: ExperimentConfig,
    path: Union[str, Path],
    notes: Optional[List[str]] = None,
) -> Path:
    """
    Write records as CSV preceded by '#' lines echoing the configuration.

    The byte content depends only on the records and the configuration.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='\n') as fh:
            for line in config.echo_lines():
                fh.write(f"# {line}\n")
            for note in [DESK_SCALE_NOTE] + list(notes or []):
                fh.write(f"# note: {note}\n")
            records_frame(records).to_csv(fh, index=False, lineterminator='\n')
        logger.info(f"Wrote {len(records)} records to {path}")
        return path
    except Exception as e:
        logger.error(f"Failed to write {path}: {e}")
        raise


def read_records_csv(path: Union[str, Path]) -> pd.DataFrame:
    """Load a CSV written by write_records_csv, skipping the echo lines"""
    return pd.read_csv(path, comment='#')


def write_summary_json(
    summary: Dict[str, Any], config: ExperimentConfig, path: Union[str, Path]
) -> Path:
    """JSON summary: experiment, config echo, aggregate statistics, failure counts"""
    path = Path(path)
    document = {
        'experiment': config.kind.value,
        'config': config.echo(),
        **summary,
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='\n') as fh:
            json.dump(document, fh, indent=2, sort_keys=True, default=str)
            fh.write('\n')
        return path
    except Exception as e:
        logger.error(f"Failed to write summary {path}: {e}")
        raise
