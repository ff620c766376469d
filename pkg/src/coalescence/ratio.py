"""
Critical benefit-to-cost ratio as an explicit numerator/denominator pair
"""
from dataclasses import dataclass
from typing import Optional

from config import Config
from errors import PoleError


@dataclass(frozen=True)
class CriticalRatio:
    """
    b* = numerator / denominator.

    Cooperation is favored at benefit b and cost c exactly when
    b * denominator > c * numerator. The pole flag is raised when
    |denominator| <= pole_tolerance * scale; value is None there.

    Attributes:
        numerator: Coefficient multiplying the cost
        denominator: Coefficient multiplying the benefit
        scale: Magnitude the pole test is relative to
        pole_tolerance: Relative pole threshold
    """
    numerator: float
    denominator: float
    scale: float = 1.0
    pole_tolerance: float = Config.POLE_TOLERANCE

    @property
    def pole_flag(self) -> bool:
        return abs(self.denominator) <= self.pole_tolerance * abs(self.scale)

    @property
    def value(self) -> Optional[float]:
        if self.pole_flag:
            return None
        return self.numerator / self.denominator

    @property
    def reciprocal(self) -> float:
        """1/b*, reported as 0.0 at a pole and as inf when the numerator vanishes"""
        if self.pole_flag:
            return 0.0
        if self.numerator == 0.0:
            return float('inf') if self.denominator > 0 else float('-inf')
        return self.denominator / self.numerator

    @property
    def cooperation_possible(self) -> bool:
        """Cooperation is favored once b/c exceeds a threshold b* > 1"""
        return not self.pole_flag and self.denominator > 0 and self.value > 1.0

    @property
    def regime(self) -> str:
        """'pole', 'threshold' (b/c > b* > 1), 'any' (every b > c) or 'spite' (no b > c)"""
        if self.pole_flag:
            return 'pole'
        if self.denominator > 0:
            return 'threshold' if self.value > 1.0 else 'any'
        return 'spite'

    def favors(self, b: float, c: float) -> bool:
        """Whether the weak-selection fixation slope is positive at (b, c)"""
        return b * self.denominator - c * self.numerator > 0.0

    def __str__(self) -> str:
        if self.pole_flag:
            return f"pole ({self.numerator:.6g}/{self.denominator:.3g})"
        return f"{self.value:.6g}"


def sigma_from_ratio(ratio: CriticalRatio) -> float:
    """sigma = (b* + 1) / (b* - 1)"""
    if ratio.pole_flag:
        raise PoleError("structure coefficient undefined: b* is at a pole")
    value = ratio.value
    if value == 1.0:
        raise PoleError("structure coefficient undefined at b* = 1")
    return (value + 1.0) / (value - 1.0)
