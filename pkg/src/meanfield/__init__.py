"""
Mean-field approximations of b*, sigma and the fixation probability
"""
from .closed_forms import (
    MeanFieldReport,
    tau_mf,
    critical_ratio_mf,
    fixation_mf,
    sigma_mf,
    mean_field_report,
)
from .sbm import (
    QHat,
    sbm_moments,
    critical_ratio_sbm,
    critical_ratio_er,
    q_hat,
    bstar_small_q,
)

__all__ = [
    'MeanFieldReport',
    'tau_mf',
    'critical_ratio_mf',
    'fixation_mf',
    'sigma_mf',
    'mean_field_report',
    'QHat',
    'sbm_moments',
    'critical_ratio_sbm',
    'critical_ratio_er',
    'q_hat',
    'bstar_small_q',
]
