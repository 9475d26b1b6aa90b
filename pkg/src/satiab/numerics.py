"""Exact two-link power split and the brute-force oracle that checks it.

Both allocation problems in this package reduce to

    maximize  w_a log2(1 + a p_a) + w_b log2(1 + b (P - p_a))
    over      floor <= p_a <= P

which is strictly concave in ``p_a``, so the clamped stationary point is
the global optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InfeasibleError

__all__ = [
    "ConcaveSplitProblem",
    "split_objective",
    "solve_split",
    "grid_oracle",
    "min_power_for_rate",
    "shannon_rate",
]

_LN2 = math.log(2.0)
# exponent limit for 2**(R/W); beyond this the required power is absurd
MAX_SPECTRAL_EFFICIENCY = 60.0


@dataclass(frozen=True)
class ConcaveSplitProblem:
    weight_a: float
    coef_a: float
    weight_b: float
    coef_b: float
    budget_w: float
    floor_a_w: float = 0.0

    def __post_init__(self):
        problems = []
        if not (self.weight_a >= 0 and self.weight_b >= 0 and self.weight_a + self.weight_b > 0):
            problems.append(f"weights must be >= 0 and not both zero, got {self.weight_a!r}, {self.weight_b!r}")
        if not (self.coef_a > 0 and self.coef_b > 0):
            problems.append(f"SNR slopes must be > 0, got {self.coef_a!r}, {self.coef_b!r}")
        if not (self.budget_w > 0 and math.isfinite(self.budget_w)):
            problems.append(f"budget must be finite and > 0, got {self.budget_w!r}")
        if not self.floor_a_w >= 0:
            problems.append(f"floor must be >= 0, got {self.floor_a_w!r}")
        if problems:
            raise DomainError("; ".join(problems))


def shannon_rate(bandwidth_hz: float, snr: float) -> float:
    """``W log2(1 + snr)`` in bit/s."""
    return bandwidth_hz * math.log1p(snr) / _LN2


def split_objective(problem: ConcaveSplitProblem, p_a: float) -> float:
    p_b = problem.budget_w - p_a
    return (shannon_rate(problem.weight_a, problem.coef_a * p_a)
            + shannon_rate(problem.weight_b, problem.coef_b * p_b))


def solve_split(problem: ConcaveSplitProblem) -> tuple[float, float]:
    """Closed-form optimum of the two-link split.

    The unconstrained stationary point is

        p_a* = (w_a (1/b + P) - w_b / a) / (w_a + w_b)

    (algebraically equal to ``[w_a a (1 + b P) - w_b b] / [a b (w_a + w_b)]``),
    then clamped to ``[floor, P]``. Returns ``(p_a, P - p_a)``.
    """
    P = problem.budget_w
    floor = problem.floor_a_w
    if floor > P:
        raise InfeasibleError(floor, P, what="access power (W)")
    w_a, w_b = problem.weight_a, problem.weight_b
    a, b = problem.coef_a, problem.coef_b
    stationary = (w_a * (1.0 / b + P) - w_b / a) / (w_a + w_b)
    p_a = min(max(stationary, floor), P)
    return p_a, P - p_a


def grid_oracle(problem: ConcaveSplitProblem, num_points: int = 100_000) -> tuple[float, float]:
    """Best point of a uniform grid over ``[floor, P]`` (both ends included).

    Ties go to the smaller ``p_a``.
    """
    if num_points < 2:
        raise DomainError(f"num_points must be >= 2, got {num_points}")
    P = problem.budget_w
    if problem.floor_a_w > P:
        raise InfeasibleError(problem.floor_a_w, P, what="access power (W)")
    p_a = np.linspace(problem.floor_a_w, P, num_points)
    p_b = P - p_a
    values = (problem.weight_a * np.log1p(problem.coef_a * p_a)
              + problem.weight_b * np.log1p(problem.coef_b * p_b)) / _LN2
    best = int(np.argmax(values))  # first maximum, i.e. smallest p_a
    return float(p_a[best]), float(p_b[best])


def min_power_for_rate(rate_bps: float, bandwidth_hz: float, snr_slope: float) -> float:
    """Power needed so that ``W log2(1 + a p) = R``, i.e. ``(2^(R/W) - 1) / a``."""
    if not rate_bps >= 0:
        raise DomainError(f"rate must be >= 0, got {rate_bps!r}")
    if not bandwidth_hz > 0 or not snr_slope > 0:
        raise DomainError(f"bandwidth and SNR slope must be > 0, got {bandwidth_hz!r}, {snr_slope!r}")
    efficiency = rate_bps / bandwidth_hz
    if efficiency > MAX_SPECTRAL_EFFICIENCY:
        raise InfeasibleError(rate_bps, MAX_SPECTRAL_EFFICIENCY * bandwidth_hz,
                              what="rate (spectral efficiency limit)")
    return math.expm1(efficiency * _LN2) / snr_slope
