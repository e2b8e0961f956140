"""Closed-form lower bounds on query counts for approximate recovery.

Any algorithm answering within radius R must split the (2k+1)^n candidate
vectors into enough answer-sequence classes that most classes fit inside a
radius-R ball; counting classes against the ball volume yields

    s >= [n log(2k+1) - log 200 - log V] / log((2k)^p n + 1)

for finite p (V the lp ball volume) and the analogous expression with
volume (2R)^n and answer base 2k+1 for the max norm.  The constants (200,
the +1 in the base) come from the counting argument and are kept explicit;
asymptotic forms are only checked as bounded ratios in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .codemaker import coordinate_power_means


@dataclass(frozen=True)
class BoundsReport:
    n: int
    k: int
    p: float
    radius: float
    log_volume: float
    s_min: float
    formula: str
    exact_integer_p: bool = True

    @property
    def volume(self) -> float:
        try:
            return math.exp(self.log_volume)
        except OverflowError:
            return math.inf


def lp_ball_log_volume(n: int, p: float, radius: float) -> float:
    """log of the volume of the radius-R lp ball in R^n (natural log)."""
    if n < 1 or p < 1 or radius <= 0:
        raise ValueError(f"need n >= 1, p >= 1, R > 0; got n={n} p={p} R={radius}")
    return (n * math.log(radius) + n * math.log(2.0)
            + n * math.lgamma(1.0 + 1.0 / p) - math.lgamma(1.0 + n / p))


def lp_ball_volume(n: int, p: float, radius: float) -> float:
    """Volume R^n 2^n Gamma(1+1/p)^n / Gamma(1+n/p), via log space."""
    return math.exp(lp_ball_log_volume(n, p, radius))


def lower_bound_lp(n: int, k: int, p: float, radius: float) -> BoundsReport:
    """Adaptive query lower bound for finite-p distance queries.

    Stated for integer p (the answer-counting step needs integer-valued
    p-th powers); real p is accepted but the report is flagged heuristic.
    Requires 0 < R <= k n^(1/p).
    """
    if not 0 < radius <= k * n ** (1.0 / p):
        raise ValueError(f"radius must lie in (0, k*n^(1/p)], got {radius}")
    log_v = lp_ball_log_volume(n, p, radius)
    numerator = n * math.log(2 * k + 1) - math.log(200.0) - log_v
    denominator = math.log((2 * k) ** p * n + 1.0)
    return BoundsReport(
        n=n, k=k, p=p, radius=radius, log_volume=log_v,
        s_min=max(numerator / denominator, 0.0),
        formula="lp-counting",
        exact_integer_p=float(p).is_integer(),
    )


def lower_bound_linf(n: int, k: int, radius: float) -> BoundsReport:
    """Adaptive query lower bound for max-norm queries; 0 < R <= k."""
    if not 0 < radius <= k:
        raise ValueError(f"radius must lie in (0, k], got {radius}")
    log_v = n * math.log(2.0 * radius)
    numerator = n * math.log((2 * k + 1) / (2.0 * radius)) - math.log(200.0)
    return BoundsReport(
        n=n, k=k, p=math.inf, radius=radius, log_volume=log_v,
        s_min=max(numerator / math.log(2 * k + 1), 0.0),
        formula="linf-counting",
    )


def min_coordinate_power_mean(k: int, p: float) -> float:
    """min over alphabet values v of mean_z |v - z|^p (attained at v = 0)."""
    return min(coordinate_power_means(k, p))


def chernoff_exponent(n: int, k: int, p: float, eps: float) -> float:
    """eps^2 times the smallest expected query power over single queries.

    The per-coordinate mean is linear in n, so doubling n doubles this
    value exactly (scaling a float by 2 commutes with rounding).
    """
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    return eps * eps * (n * min_coordinate_power_mean(k, p))


def noisy_bound_exponent(n: int, k: int, p: float, eps: float) -> float:
    """Order-of-magnitude exponent for the noisy-oracle query bound.

    chernoff_exponent minus the log 200 slack of the counting argument.
    An indicator, not a certified constant.
    """
    return chernoff_exponent(n, k, p, eps) - math.log(200.0)
