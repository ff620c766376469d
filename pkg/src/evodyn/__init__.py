"""
Death-birth evolutionary dynamics on graphs
"""
from .game import GameMatrix, StrategyState
from .simulator import (
    TrialSummary,
    payoffs,
    check_selection_strength,
    step,
    run_to_fixation,
    estimate_fixation,
    default_step_cap,
)

__all__ = [
    'GameMatrix',
    'StrategyState',
    'TrialSummary',
    'payoffs',
    'check_selection_strength',
    'step',
    'run_to_fixation',
    'estimate_fixation',
    'default_step_cap',
]
