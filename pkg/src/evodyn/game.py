"""
Two-strategy games and strategy assignments
"""
import math
from typing import Iterable, Union

import numpy as np
from pydantic import BaseModel, field_validator


class GameMatrix(BaseModel):
    """
    Payoffs to the focal player: R for (C, C), S for (C, D), T for (D, C),
    P for (D, D).
    """
    R: float
    S: float
    T: float
    P: float

    model_config = {'frozen': True}

    @field_validator('R', 'S', 'T', 'P')
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"payoff must be finite, got {value}")
        return value

    @classmethod
    def donation(cls, b: float, c: float = 1.0) -> 'GameMatrix':
        """Cooperators pay c to give b: R=b-c, S=-c, T=b, P=0"""
        return cls(R=b - c, S=-c, T=b, P=0.0)

    def as_array(self) -> np.ndarray:
        """[[P, T], [S, R]] indexed by [own strategy, partner strategy]"""
        return np.array([[self.P, self.T], [self.S, self.R]], dtype=np.float64)


class StrategyState:
    """
    Binary strategy per node, 1 = C and 0 = D.

    Instances are immutable; step() returns a new state.
    """

    __slots__ = ('_s',)

    def __init__(self, s: Union[Iterable[int], np.ndarray]):
        values = np.asarray(list(s) if not isinstance(s, np.ndarray) else s)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("strategy state must be a nonempty 1-d sequence")
        if not np.isin(values, (0, 1)).all():
            raise ValueError("strategy values must be 0 or 1")
        self._s = values.astype(np.int8)
        self._s.flags.writeable = False

    @classmethod
    def single(cls, n: int, x: int) -> 'StrategyState':
        """One cooperator at node x, defectors elsewhere"""
        s = np.zeros(n, dtype=np.int8)
        s[x] = 1
        return cls(s)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> 'StrategyState':
        """Bit x of mask is s_x"""
        return cls((mask >> np.arange(n)) & 1)

    @property
    def s(self) -> np.ndarray:
        return self._s

    @property
    def n(self) -> int:
        return len(self._s)

    @property
    def cooperators(self) -> int:
        return int(self._s.sum())

    @property
    def is_absorbing(self) -> bool:
        return self.cooperators in (0, self.n)

    @property
    def all_cooperate(self) -> bool:
        return self.cooperators == self.n

    def mask(self) -> int:
        return int(np.dot(self._s.astype(np.int64), 1 << np.arange(self.n, dtype=np.int64)))

    def __eq__(self, other) -> bool:
        return isinstance(other, StrategyState) and np.array_equal(self._s, other._s)

    def __hash__(self) -> int:
        return hash(self._s.tobytes())

    def __repr__(self) -> str:
        return f"StrategyState({''.join(map(str, self._s.tolist()))})"
