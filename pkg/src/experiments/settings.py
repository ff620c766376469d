"""
Experiment configuration: flat key-value files plus command-line overrides
"""
import enum
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from config import Config
from errors import ConfigError
from evodyn import GameMatrix
from generators import Family

logger = logging.getLogger(__name__)


class ExperimentKind(str, enum.Enum):
    SWEEP_N = 'sweep-n'
    SWEEP_P_ER = 'sweep-p-er'
    SWEEP_Q_SBM = 'sweep-q-sbm'
    FAMILIES = 'families-histogram'
    ANALYZE_FILE = 'analyze-file'
    SIMULATE = 'simulate'


def _er_p_grid() -> List[float]:
    return [round(p, 2) for p in np.arange(0.05, 1.0001, 0.05)]


def _sbm_q_grid() -> List[float]:
    return [round(q, 3) for q in np.arange(0.01, 0.6001, 0.02)]


# Per-kind defaults applied before file values and overrides
KIND_DEFAULTS: Dict[ExperimentKind, Dict[str, Any]] = {
    ExperimentKind.SWEEP_N: {'p': 0.7, 'q': 0.1, 'm': 3, 'grid': Config.SWEEP_N_GRID},
    ExperimentKind.SWEEP_P_ER: {'n': 100, 'grid': _er_p_grid()},
    ExperimentKind.SWEEP_Q_SBM: {'n': 100, 'p': 0.8, 'm_values': [2, 4], 'grid': _sbm_q_grid()},
    ExperimentKind.FAMILIES: {'replicates': Config.FAMILIES_PER_FAMILY},
    ExperimentKind.ANALYZE_FILE: {},
    ExperimentKind.SIMULATE: {'trials': 10_000},
}


class ExperimentConfig(BaseModel):
    """
    Resolved settings of one experiment run.

    grid holds N values for sweep-n, p values for sweep-p-er and q values for
    sweep-q-sbm. For the families experiment replicates is the number of
    networks per family.
    """
    kind: ExperimentKind
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    replicates: int = Field(default=Config.DEFAULT_REPLICATES, ge=1)
    threads: int = Field(default=1, ge=1)
    out: Optional[Path] = None

    # Graph parameters
    n: int = Field(default=100, ge=3)
    p: float = Field(default=0.7, ge=0.0, le=1.0)
    q: float = Field(default=0.1, ge=0.0, le=1.0)
    m: int = Field(default=3, ge=1)
    grid: List[float] = Field(default_factory=list)
    m_values: List[int] = Field(default_factory=lambda: [2, 4])
    families: List[Family] = Field(default_factory=lambda: list(Family))
    min_n: int = Field(default=Config.FAMILIES_MIN_N, ge=3)
    max_n: int = Field(default=Config.FAMILIES_MAX_N, ge=3)

    # Exact solver
    method: str = Config.SOLVER_METHOD
    tolerance: float = Field(default=Config.SOLVER_TOLERANCE, gt=0.0)
    connect_attempts: int = Field(default=Config.CONNECT_MAX_ATTEMPTS, ge=1)

    # Dynamics
    graph: Optional[Path] = None
    family: Optional[Family] = None
    family_params: Dict[str, float] = Field(default_factory=dict)
    b: float = 2.0
    c: float = 1.0
    R: Optional[float] = None
    S: Optional[float] = None
    T: Optional[float] = None
    P: Optional[float] = None
    delta: float = 0.0
    trials: int = Field(default=10_000, ge=1)
    placement: Union[int, str] = 'uniform'

    model_config = {'frozen': True}

    @field_validator('grid', 'm_values', 'families', mode='before')
    @classmethod
    def _split_lists(cls, value):
        if isinstance(value, str):
            return [v.strip() for v in value.split(',') if v.strip()]
        return value

    @field_validator('placement', mode='before')
    @classmethod
    def _placement(cls, value):
        if isinstance(value, str) and value.strip().lstrip('-').isdigit():
            return int(value)
        return value

    @model_validator(mode='after')
    def _check(self):
        kind = self.kind
        if kind in (ExperimentKind.SWEEP_N, ExperimentKind.SWEEP_P_ER, ExperimentKind.SWEEP_Q_SBM):
            if not self.grid:
                raise ValueError(f"{kind.value}: grid must be nonempty")
        if kind is ExperimentKind.SWEEP_N:
            for value in self.grid:
                if value != int(value) or value < max(3, self.m):
                    raise ValueError(f"sweep-n: grid value {value} is not an integer N >= max(3, m)")
        if kind is ExperimentKind.SWEEP_P_ER:
            for value in self.grid:
                if not 0.0 < value <= 1.0:
                    raise ValueError(f"sweep-p-er: p={value} outside (0, 1]")
        if kind is ExperimentKind.SWEEP_Q_SBM:
            for value in self.grid:
                if not 0.0 <= value <= 1.0:
                    raise ValueError(f"sweep-q-sbm: q={value} outside [0, 1]")
            if not self.m_values or min(self.m_values) < 2:
                raise ValueError("sweep-q-sbm: m_values must be nonempty with every m >= 2")
        if kind is ExperimentKind.FAMILIES:
            if not self.families:
                raise ValueError("families-histogram: family list is empty")
            if self.min_n > self.max_n:
                raise ValueError(f"families-histogram: min_n={self.min_n} above max_n={self.max_n}")
        if self.placement != 'uniform' and not isinstance(self.placement, int):
            raise ValueError(f"placement must be 'uniform' or a node index, got {self.placement!r}")
        return self

    @classmethod
    def for_kind(cls, kind: Union[str, ExperimentKind], **values) -> 'ExperimentConfig':
        """Kind defaults, then the given values (None entries are ignored)"""
        kind = ExperimentKind(kind)
        merged = dict(KIND_DEFAULTS[kind])
        merged.update({key: value for key, value in values.items() if value is not None})
        merged['kind'] = kind
        return cls(**merged)

    def game(self) -> GameMatrix:
        """Explicit R, S, T, P when all are set, otherwise the donation game (b, c)"""
        entries = (self.R, self.S, self.T, self.P)
        if all(e is not None for e in entries):
            return GameMatrix(R=self.R, S=self.S, T=self.T, P=self.P)
        if any(e is not None for e in entries):
            raise ConfigError("set all four of R, S, T, P or none of them")
        return GameMatrix.donation(self.b, self.c)

    def echo(self) -> Dict[str, Any]:
        """Flat, JSON-safe view of every resolved value except the worker count and output path"""
        flat = self.model_dump(mode='json', exclude={'threads', 'out'})
        flat['kind'] = self.kind.value
        return flat

    def echo_lines(self) -> List[str]:
        lines = []
        for key, value in self.echo().items():
            if isinstance(value, list):
                value = ','.join(str(v) for v in value)
            elif isinstance(value, dict):
                value = ','.join(f"{k}={v}" for k, v in sorted(value.items()))
            lines.append(f"{key}: {value}")
        return lines


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Parse a flat 'key: value' file ('#' starts a comment)"""
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as fh:
            values = yaml.safe_load(fh) or {}
    except Exception as e:
        logger.error(f"Failed to read config file {path}: {e}")
        raise ConfigError(f"cannot read config file {path}: {e}") from e

    if not isinstance(values, dict):
        raise ConfigError(f"{path}: expected 'key: value' lines, got {type(values).__name__}")
    nested = [key for key, value in values.items() if isinstance(value, dict) and key != 'family_params']
    if nested:
        raise ConfigError(f"{path}: nested sections are not supported ({', '.join(map(str, nested))})")
    return {str(key): value for key, value in values.items()}


def load_experiment_config(
    kind: Union[str, ExperimentKind],
    path: Optional[Union[str, Path]] = None,
    **overrides,
) -> ExperimentConfig:
    """
    Resolve an experiment configuration.

    Precedence: kind defaults < config file < command-line overrides.

    Raises:
        ConfigError: unreadable file or invalid values
    """
    values: Dict[str, Any] = read_config_file(path) if path else {}
    file_kind = values.pop('kind', None)
    if file_kind is not None and ExperimentKind(file_kind) != ExperimentKind(kind):
        logger.warning(f"Config file kind '{file_kind}' ignored; running '{ExperimentKind(kind).value}'")
    values.update({key: value for key, value in overrides.items() if value is not None})

    try:
        config = ExperimentConfig.for_kind(kind, **values)
    except ValidationError as e:
        raise ConfigError(f"invalid {ExperimentKind(kind).value} configuration: {e}") from e

    if config.kind is ExperimentKind.FAMILIES and config.max_n < Config.FAMILIES_MAX_N:
        logger.info(f"Family network sizes capped at max_n={config.max_n} (default {Config.FAMILIES_MAX_N})")
    return config
