"""
Generator parameter schemas
"""
import enum
import logging
from typing import Any, Dict, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from config import Config

logger = logging.getLogger(__name__)


class Family(str, enum.Enum):
    """Random-graph families"""
    SBM = 'SBM'
    ER = 'ER'
    SMALL_WORLD = 'SmallWorld'
    PA_SHIFTED = 'PAShifted'
    PA_SUPERLINEAR = 'PASuperlinear'
    HOLME_KIM = 'HolmeKim'
    KLEMM_EGUILUZ = 'KlemmEguiluz'
    SPATIAL_SF = 'SpatialSF'
    UCM = 'UCM'


INTEGER_PARAMS = {'n', 'm', 'lattice_degree', 'links_per_node', 'k_min'}


class SbmParams(BaseModel):
    """Stochastic block model: m balanced groups, intra p, inter q"""
    n: int = Field(ge=1)
    m: int = Field(ge=1)
    p: float = Field(ge=0.0, le=1.0)
    q: float = Field(ge=0.0, le=1.0)

    model_config = {'frozen': True}

    @model_validator(mode='after')
    def _groups_fit(self):
        if self.m > self.n:
            raise ValueError(f"group count m={self.m} exceeds node count n={self.n}")
        return self

    @property
    def alpha(self) -> float:
        return 1.0 / self.m

    @property
    def beta(self) -> float:
        return 1.0 - 1.0 / self.m


class GeneratorSpec(BaseModel):
    """Family tag, family-specific parameters and a 64-bit seed"""
    family: Family
    params: Dict[str, Union[int, float]]
    seed: int = Field(default=0, ge=0, lt=2 ** 64)

    model_config = {'frozen': True}

    @field_validator('params')
    @classmethod
    def _coerce_integers(cls, params: Dict[str, Union[int, float]]) -> Dict[str, Union[int, float]]:
        coerced = {}
        for key, value in params.items():
            if key in INTEGER_PARAMS:
                if float(value) != int(value):
                    raise ValueError(f"parameter {key} must be an integer, got {value}")
                coerced[key] = int(value)
            else:
                coerced[key] = float(value)
        return coerced

    @model_validator(mode='after')
    def _within_ranges(self):
        ranges = Config.FAMILY_RANGES[self.family.value]
        missing = set(ranges) - set(self.params)
        if missing:
            raise ValueError(f"{self.family.value}: missing parameters {sorted(missing)}")
        unknown = set(self.params) - set(ranges)
        if unknown:
            raise ValueError(f"{self.family.value}: unknown parameters {sorted(unknown)}")

        for key, (low, high) in ranges.items():
            value = self.params[key]
            if low is not None and value < low:
                raise ValueError(f"{self.family.value}: {key}={value} below minimum {low}")
            if high is not None and value > high:
                raise ValueError(f"{self.family.value}: {key}={value} above maximum {high}")

        if self.family is Family.SBM and self.params['m'] > self.params['n']:
            raise ValueError(f"SBM: m={self.params['m']} exceeds n={self.params['n']}")
        if self.family is Family.SMALL_WORLD:
            k = self.params['lattice_degree']
            if k % 2:
                raise ValueError(f"SmallWorld: lattice_degree={k} must be even")
            if k >= self.params['n']:
                raise ValueError(f"SmallWorld: lattice_degree={k} must be below n={self.params['n']}")
        return self

    def with_seed(self, seed: int) -> 'GeneratorSpec':
        return self.model_copy(update={'seed': seed})

    def to_flat(self) -> Dict[str, Any]:
        """Flat key-value form used in configuration files and output echoes"""
        flat: Dict[str, Any] = {'family': self.family.value, 'seed': self.seed}
        flat.update(self.params)
        return flat

    @classmethod
    def from_flat(cls, values: Dict[str, Any]) -> 'GeneratorSpec':
        values = dict(values)
        family = values.pop('family')
        seed = int(values.pop('seed', 0))
        return cls(family=family, params=values, seed=seed)

    def sbm_params(self) -> SbmParams:
        if self.family is Family.SBM:
            return SbmParams(**self.params)
        if self.family is Family.ER:
            return SbmParams(n=self.params['n'], m=1, p=self.params['p'], q=self.params['p'])
        raise ValueError(f"{self.family.value} has no block-model parameters")
