"""
Per-network result records
"""
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, model_validator

from coalescence import CriticalRatio


class SweepRecord(BaseModel):
    """
    One (parameter point, replicate) outcome.

    ratio is mean-field b* over exact b*, present only when both are finite.
    """
    experiment: str
    point_index: int
    replicate: int
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: int
    status: str = 'ok'
    error: str = ''
    attempts: int = 0
    n: Optional[int] = None

    exact_numerator: Optional[float] = None
    exact_denominator: Optional[float] = None
    exact_value: Optional[float] = None
    exact_reciprocal: Optional[float] = None
    exact_pole: Optional[bool] = None

    mf_numerator: Optional[float] = None
    mf_denominator: Optional[float] = None
    mf_value: Optional[float] = None
    mf_reciprocal: Optional[float] = None
    mf_pole: Optional[bool] = None

    ratio: Optional[float] = None

    @model_validator(mode='after')
    def _ratio_needs_both(self):
        if self.exact_value is None or self.mf_value is None or self.exact_value == 0.0:
            self.ratio = None
        return self

    @property
    def ok(self) -> bool:
        return self.status == 'ok'

    @property
    def sort_key(self):
        return self.point_index, self.replicate

    def with_ratios(self, exact: CriticalRatio, mean_field: CriticalRatio) -> 'SweepRecord':
        """Copy with both critical ratios filled in"""
        ratio = None
        if exact.value is not None and mean_field.value is not None and exact.value != 0.0:
            ratio = mean_field.value / exact.value
        return self.model_copy(update={
            'exact_numerator': exact.numerator,
            'exact_denominator': exact.denominator,
            'exact_value': exact.value,
            'exact_reciprocal': exact.reciprocal,
            'exact_pole': exact.pole_flag,
            'mf_numerator': mean_field.numerator,
            'mf_denominator': mean_field.denominator,
            'mf_value': mean_field.value,
            'mf_reciprocal': mean_field.reciprocal,
            'mf_pole': mean_field.pole_flag,
            'ratio': ratio,
        })

    def to_row(self) -> Dict[str, Any]:
        """Flat CSV row: identifiers, parameters, then results"""
        row: Dict[str, Any] = {
            'experiment': self.experiment,
            'point_index': self.point_index,
            'replicate': self.replicate,
        }
        row.update(self.params)
        row.update(self.model_dump(exclude={'experiment', 'point_index', 'replicate', 'params'}))
        return row
