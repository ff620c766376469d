"""
Mean-field closed forms driven by the first two degree moments.

Replacing every remeeting time by its network average gives
tau_x ~ n mu1^2 / mu2, from which b*, sigma and the first-order fixation
probability follow without solving for meeting times.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from coalescence import CriticalRatio
from errors import GraphError, PoleError
from graph_core import DegreeMoments

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeanFieldReport:
    """Mean-field estimates for one set of degree moments"""
    moments: DegreeMoments
    tau_mf: float
    bstar_mf: CriticalRatio
    sigma_mf: Optional[float]
    rho_mf: float
    b: float
    c: float
    delta: float


def _check(moments: DegreeMoments):
    if moments.mu1 <= 0 or moments.mu2 <= 0:
        raise GraphError(f"degree moments must be positive, got mu1={moments.mu1}, mu2={moments.mu2}")


def tau_mf(moments: DegreeMoments) -> float:
    """
    n mu1^2 / mu2.

    Degree moments of an actual graph give tau >= 1; expected moments of a
    very sparse random model can fall below, which is logged.
    """
    _check(moments)
    tau = moments.n * moments.mu1 ** 2 / moments.mu2
    if tau < 1.0:
        logger.warning(f"Mean-field remeeting time {tau:.6g} below 1 for moments {moments}")
    return tau


def critical_ratio_mf(moments: DegreeMoments) -> CriticalRatio:
    """b* ~ (n - 2 mu2/mu1^2) / (n/mu1 - 2 mu2/mu1^2)"""
    _check(moments)
    spread = 2.0 * moments.mu2 / moments.mu1 ** 2
    return CriticalRatio(
        numerator=moments.n - spread,
        denominator=moments.n / moments.mu1 - spread,
        scale=moments.n,
    )


def fixation_mf(moments: DegreeMoments, b: float, c: float, delta: float) -> float:
    """rho ~ 1/n + delta/(2n) [b (n mu1/mu2 - 2) - c (n mu1^2/mu2 - 2)]"""
    _check(moments)
    n = moments.n
    if delta == 0:
        return 1.0 / n
    benefit = n * moments.mu1 / moments.mu2 - 2.0
    cost = n * moments.mu1 ** 2 / moments.mu2 - 2.0
    return 1.0 / n + delta / (2.0 * n) * (b * benefit - c * cost)


def sigma_mf(moments: DegreeMoments) -> float:
    """
    Mean-field structure coefficient [n(mu1 + 1) - 4 mu2/mu1] / [n(mu1 - 1)].

    Raises:
        PoleError: mu1 <= 1, where the expression is outside its range of validity
    """
    _check(moments)
    if moments.mu1 <= 1.0:
        raise PoleError(f"mean-field sigma needs mu1 > 1, got mu1={moments.mu1}")
    n, mu1, mu2 = moments.n, moments.mu1, moments.mu2
    return (n * (mu1 + 1.0) - 4.0 * mu2 / mu1) / (n * (mu1 - 1.0))


def mean_field_report(
    moments: DegreeMoments, b: float = 0.0, c: float = 1.0, delta: float = 0.0
) -> MeanFieldReport:
    """Bundle tau, b*, sigma and rho; sigma is None where undefined"""
    ratio = critical_ratio_mf(moments)
    try:
        sigma = sigma_mf(moments)
    except PoleError as e:
        logger.debug(f"Mean-field sigma undefined: {e}")
        sigma = None
    return MeanFieldReport(
        moments=moments,
        tau_mf=tau_mf(moments),
        bstar_mf=ratio,
        sigma_mf=sigma,
        rho_mf=fixation_mf(moments, b, c, delta),
        b=b,
        c=c,
        delta=delta,
    )
