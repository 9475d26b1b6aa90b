"""FDD backhauling: access and ISL each use their own W_F sub-band.

There is no interference between the UE and S2 in this mode; only the
downlink from S1 is modelled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .channel import LinkGains, SatelliteNode, SpectrumPlan, UserTerminal
from .errors import DomainError, InfeasibleError
from .numerics import ConcaveSplitProblem, min_power_for_rate, shannon_rate, solve_split

__all__ = [
    "PowerAllocation",
    "FddResult",
    "RATE_TOLERANCE_BPS",
    "fdd_snrs",
    "fdd_throughput",
    "fdd_optimal_allocation",
    "fdd_evaluate",
]

# absolute slack on minimum-rate comparisons
RATE_TOLERANCE_BPS = 1.0
# a rate floor this close to the budget is treated as the budget itself
_BUDGET_SNAP = 1e-12


@dataclass(frozen=True)
class PowerAllocation:
    """Split of S1's power between access (``p_access_w``) and ISL (``p_isl_w``)."""

    p_access_w: float
    p_isl_w: float

    def __post_init__(self):
        if not (self.p_access_w >= 0 and self.p_isl_w >= 0):
            raise DomainError(f"powers must be >= 0, got {self.p_access_w!r}, {self.p_isl_w!r}")

    @property
    def total_w(self) -> float:
        return self.p_access_w + self.p_isl_w

    def check_budget(self, budget_w: float) -> None:
        if self.total_w > budget_w * (1.0 + 1e-12):
            raise DomainError(f"allocation {self.total_w!r} W exceeds budget {budget_w!r} W")


@dataclass(frozen=True)
class FddResult:
    snr_ue: float
    snr_s2: float
    rate_access_bps: float
    rate_isl_bps: float
    rate_total_bps: float
    allocation: PowerAllocation


def _slopes(gains: LinkGains, spectrum: SpectrumPlan) -> tuple[float, float]:
    noise = spectrum.noise_psd_w_per_hz * spectrum.fdd_bandwidth_hz
    return gains.beta_ue1 / noise, gains.beta_isl / noise


def fdd_snrs(gains: LinkGains, alloc: PowerAllocation, spectrum: SpectrumPlan) -> tuple[float, float]:
    """SNR at the UE and at S2, both over an FDD sub-band."""
    a, b = _slopes(gains, spectrum)
    return alloc.p_access_w * a, alloc.p_isl_w * b


def fdd_throughput(gains: LinkGains, alloc: PowerAllocation, spectrum: SpectrumPlan) -> FddResult:
    snr_ue, snr_s2 = fdd_snrs(gains, alloc, spectrum)
    w_f = spectrum.fdd_bandwidth_hz
    r_access = shannon_rate(w_f, snr_ue)
    r_isl = shannon_rate(w_f, snr_s2)
    return FddResult(
        snr_ue=snr_ue,
        snr_s2=snr_s2,
        rate_access_bps=r_access,
        rate_isl_bps=r_isl,
        rate_total_bps=r_access + r_isl,
        allocation=alloc,
    )


def fdd_problem(gains: LinkGains, s1: SatelliteNode, ue: UserTerminal,
                spectrum: SpectrumPlan) -> ConcaveSplitProblem:
    """Build the power-split problem, raising if the minimum rate is out of reach."""
    a, b = _slopes(gains, spectrum)
    P = s1.total_power_w
    w_f = spectrum.fdd_bandwidth_hz
    r_min = ue.min_access_rate_bps
    r_max = shannon_rate(w_f, a * P)
    if r_min > r_max + RATE_TOLERANCE_BPS:
        raise InfeasibleError(r_min, r_max)
    floor = min(min_power_for_rate(r_min, w_f, a), P)
    if floor >= P * (1.0 - _BUDGET_SNAP):
        floor = P
    return ConcaveSplitProblem(weight_a=w_f, coef_a=a, weight_b=w_f, coef_b=b,
                               budget_w=P, floor_a_w=floor)


def fdd_optimal_allocation(gains: LinkGains, s1: SatelliteNode, ue: UserTerminal,
                           spectrum: SpectrumPlan) -> PowerAllocation:
    """Throughput-optimal split under the budget and the minimum access rate.

    Water-filling over the two FDD sub-bands: the interior optimum is
    ``P/2 + 1/(2b) - 1/(2a)``, clamped to ``[P_min, P]`` where ``P_min``
    is the access power that just meets the minimum rate. The whole
    budget is always spent.

    Raises
    ------
    InfeasibleError
        If even ``P_A = P_S1`` misses the minimum access rate.
    """
    p_a, p_i = solve_split(fdd_problem(gains, s1, ue, spectrum))
    return PowerAllocation(p_access_w=p_a, p_isl_w=p_i)


def fdd_evaluate(gains: LinkGains, s1: SatelliteNode, ue: UserTerminal,
                 spectrum: SpectrumPlan) -> FddResult:
    """Optimise the split and report the resulting SNRs and rates."""
    alloc = fdd_optimal_allocation(gains, s1, ue, spectrum)
    return fdd_throughput(gains, alloc, spectrum)
