"""
Block-model and Erdos-Renyi specializations of the mean-field ratio
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from coalescence import CriticalRatio
from errors import MeanFieldDomainError
from generators import SbmParams
from graph_core import DegreeMoments

logger = logging.getLogger(__name__)


def _link_stats(params: SbmParams):
    """Per-pair link probability a and variance v for a node's degree"""
    a = params.alpha * params.p + params.beta * params.q
    v = params.alpha * params.p * (1 - params.p) + params.beta * params.q * (1 - params.q)
    return a, v


def sbm_moments(params: SbmParams) -> DegreeMoments:
    """
    Expected degree moments of the block model.

    mu1 = (N-1)(alpha p + beta q); the variance adds the intra- and
    inter-group binomial variances.
    """
    a, v = _link_stats(params)
    mu1 = (params.n - 1) * a
    variance = (params.n - 1) * v
    return DegreeMoments(n=params.n, mu1=mu1, mu2=variance + mu1 ** 2)


def critical_ratio_sbm(params: SbmParams) -> CriticalRatio:
    """Closed-form b* for the block model with alpha = 1/m, beta = 1 - 1/m"""
    n = params.n
    if n < 3:
        raise MeanFieldDomainError(f"block-model closed form needs N >= 3, got N={n}")
    a, v = _link_stats(params)
    if a <= 0.0:
        raise MeanFieldDomainError(
            f"block-model closed form needs a positive link probability, got p={params.p}, q={params.q}"
        )
    spread = 2.0 / (n - 1) * v / a ** 2
    return CriticalRatio(
        numerator=n - 2.0 - spread,
        denominator=n / (n - 1) / a - 2.0 - spread,
        scale=n,
    )


def critical_ratio_er(n: int, p: float) -> CriticalRatio:
    """b* ~ [p(n^2 - 3n + 4) - 2] / [(n - 2)(1 - 2p)]; pole at p = 1/2"""
    if n < 3:
        raise MeanFieldDomainError(f"ER closed form needs n >= 3, got {n}")
    if not 0.0 < p <= 1.0:
        raise MeanFieldDomainError(f"ER closed form needs 0 < p <= 1, got {p}")
    return CriticalRatio(
        numerator=p * (n * n - 3 * n + 4) - 2.0,
        denominator=(n - 2) * (1.0 - 2.0 * p),
        scale=n,
    )


@dataclass(frozen=True)
class QHat:
    """
    Spite threshold in q for the block model.

    expansion is the large-N two-term formula; exact_root is the root in [0, 1]
    of the closed-form denominator nearest the expansion, or None.
    """
    m: int
    p: float
    n: int
    expansion: float
    exact_root: Optional[float]


def q_hat(m: int, p: float, n: int) -> QHat:
    """Inter-group probability above which cooperation is never favored"""
    if m < 2:
        raise MeanFieldDomainError(f"q_hat needs at least two groups, got m={m}")

    expansion = (m - 2 * p) / (2 * (m - 1)) + 2 * m * (0.5 - p) ** 2 / ((m - 1) ** 2 * n)

    # denominator * (N-1) a^2 = N a - 2 (N-1) a^2 - 2 v, quadratic in q
    alpha, beta = 1.0 / m, 1.0 - 1.0 / m
    a0 = alpha * p
    v0 = alpha * p * (1 - p)
    coefficients = [
        -2.0 * (n - 1) * beta ** 2 + 2.0 * beta,
        n * beta - 4.0 * (n - 1) * a0 * beta - 2.0 * beta,
        n * a0 - 2.0 * (n - 1) * a0 ** 2 - 2.0 * v0,
    ]
    roots = np.roots(coefficients)
    real = [
        float(r.real) for r in roots
        if abs(r.imag) <= 1e-12 * max(1.0, abs(r.real)) and -1e-12 <= r.real <= 1.0 + 1e-12
    ]

    exact_root = None
    if real:
        exact_root = min(real, key=lambda r: abs(r - expansion))
        exact_root = min(max(exact_root, 0.0), 1.0)
    else:
        logger.info(f"q_hat: no spite transition in [0, 1] for m={m}, p={p}, n={n}")

    return QHat(m=m, p=p, n=n, expansion=expansion, exact_root=exact_root)


def bstar_small_q(n: int, m: int, p: float) -> CriticalRatio:
    """
    b* for sparsely interconnected groups (q -> 0+):
    [n(n-2)p - 2m(1-p)] / [n(m-2p) - 2m(1-p)].
    """
    if m < 2:
        raise MeanFieldDomainError(f"small-q limit needs at least two groups, got m={m}")
    if not 0.0 < p <= 1.0:
        raise MeanFieldDomainError(f"small-q limit needs 0 < p <= 1, got {p}")
    return CriticalRatio(
        numerator=n * (n - 2) * p - 2.0 * m * (1 - p),
        denominator=n * (m - 2 * p) - 2.0 * m * (1 - p),
        scale=n,
    )
