"""
Exact coalescing-walk quantities: meeting times, remeeting times, b* and sigma
"""
from .meeting_times import (
    METHODS,
    MeetingTimes,
    meeting_times,
    pair_residual,
    save_meeting_times,
    load_meeting_times,
)
from .ratio import CriticalRatio, sigma_from_ratio
from .remeeting import (
    CoalescenceSummary,
    CoalescenceReport,
    remeeting_times,
    fixation_coefficients,
    fixation_probability_exact,
    critical_ratio_exact,
    structure_coefficient,
    selection_condition,
    coalescence_report,
)

__all__ = [
    'METHODS',
    'MeetingTimes',
    'meeting_times',
    'pair_residual',
    'save_meeting_times',
    'load_meeting_times',
    'CriticalRatio',
    'sigma_from_ratio',
    'CoalescenceSummary',
    'CoalescenceReport',
    'remeeting_times',
    'fixation_coefficients',
    'fixation_probability_exact',
    'critical_ratio_exact',
    'structure_coefficient',
    'selection_condition',
    'coalescence_report',
]
