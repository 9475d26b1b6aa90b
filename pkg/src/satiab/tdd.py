"""TDD backhauling over the full band W_T, with FDD access to the UE.

Time alternates between two equal phases:

* S2 receiving: S1 splits its power between the UE and S2, and the UE
  sees no interference.
* S2 transmitting: S1 spends its whole budget on the UE, which now also
  hears S2 through a side-lobe.

Only the first phase needs a power split.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .channel import LinkGains, SatelliteNode, SpectrumPlan, UserTerminal
from .errors import DomainError, InfeasibleError
from .fdd import RATE_TOLERANCE_BPS, PowerAllocation
from .numerics import ConcaveSplitProblem, min_power_for_rate, shannon_rate, solve_split

__all__ = [
    "TddPhase",
    "TddResult",
    "tdd_ue_sinr",
    "tdd_s2_sinr",
    "tdd_access_rates",
    "tdd_isl_rate",
    "tdd_problem",
    "tdd_optimal_allocation",
    "tdd_evaluate",
]

_BUDGET_SNAP = 1e-12


class TddPhase(enum.IntEnum):
    S2_RECEIVING = 0
    S2_TRANSMITTING = 1


@dataclass(frozen=True)
class TddResult:
    sinr_ue_phase0: float
    sinr_ue_phase1: float
    sinr_s2: float
    rate_access1_bps: float
    rate_access2_bps: float
    rate_isl_bps: float
    rate_total_bps: float
    allocation: PowerAllocation

    @property
    def rate_access_avg_bps(self) -> float:
        return 0.5 * (self.rate_access1_bps + self.rate_access2_bps)


def tdd_ue_sinr(gains: LinkGains, p_access_w: float, s2: SatelliteNode,
                spectrum: SpectrumPlan, phase: TddPhase) -> float:
    """SINR at the UE in the given phase.

    While S2 transmits, its wideband signal leaks into the UE's sub-band
    scaled by ``W_F / W_T``.
    """
    w_f = spectrum.fdd_bandwidth_hz
    noise = spectrum.noise_psd_w_per_hz * w_f
    signal = p_access_w * gains.beta_ue1
    if TddPhase(phase) is TddPhase.S2_RECEIVING:
        return signal / noise
    interference = s2.total_power_w * gains.beta_ue2 * (w_f / spectrum.total_bandwidth_hz)
    return signal / (interference + noise)


def _isl_slope(gains: LinkGains, ue: UserTerminal, spectrum: SpectrumPlan) -> float:
    noise = spectrum.noise_psd_w_per_hz * spectrum.total_bandwidth_hz
    return gains.beta_isl / (ue.uplink_power_w * gains.beta_ue2 + noise)


def tdd_s2_sinr(gains: LinkGains, p_isl_w: float, ue: UserTerminal, spectrum: SpectrumPlan) -> float:
    """SINR at S2 while it receives; the UE uplink is the interferer."""
    return p_isl_w * _isl_slope(gains, ue, spectrum)


def tdd_access_rates(gains: LinkGains, alloc: PowerAllocation, s1: SatelliteNode,
                     s2: SatelliteNode, spectrum: SpectrumPlan) -> tuple[float, float]:
    """Access rates in the interference-free and the interfered phase.

    The second rate uses the full budget ``P_S1`` regardless of the split.
    """
    w_f = spectrum.fdd_bandwidth_hz
    r1 = shannon_rate(w_f, tdd_ue_sinr(gains, alloc.p_access_w, s2, spectrum, TddPhase.S2_RECEIVING))
    r2 = shannon_rate(w_f, tdd_ue_sinr(gains, s1.total_power_w, s2, spectrum, TddPhase.S2_TRANSMITTING))
    return r1, r2


def tdd_isl_rate(gains: LinkGains, alloc: PowerAllocation, ue: UserTerminal,
                 spectrum: SpectrumPlan) -> float:
    # half the time on the full band
    return shannon_rate(0.5 * spectrum.total_bandwidth_hz,
                        tdd_s2_sinr(gains, alloc.p_isl_w, ue, spectrum))


def tdd_problem(gains: LinkGains, s1: SatelliteNode, s2: SatelliteNode, ue: UserTerminal,
                spectrum: SpectrumPlan) -> ConcaveSplitProblem:
    """Split problem for the S2-receiving phase.

    The average-rate constraint ``R_A1 + R_A2 >= 2 R_min`` becomes a lower
    bound on the access power, because ``R_A2`` does not depend on the split.
    """
    w_f = spectrum.fdd_bandwidth_hz
    P = s1.total_power_w
    noise_f = spectrum.noise_psd_w_per_hz * w_f
    a = gains.beta_ue1 / noise_f
    c = _isl_slope(gains, ue, spectrum)
    if not (a > 0 and c > 0):
        raise DomainError(f"degenerate TDD SNR slopes a={a!r}, c={c!r}")

    r_a2 = shannon_rate(w_f, tdd_ue_sinr(gains, P, s2, spectrum, TddPhase.S2_TRANSMITTING))
    r_min = ue.min_access_rate_bps
    r_a1_max = shannon_rate(w_f, a * P)
    if 2.0 * r_min > r_a1_max + r_a2 + 2.0 * RATE_TOLERANCE_BPS:
        raise InfeasibleError(r_min, 0.5 * (r_a1_max + r_a2), what="average access rate")

    shortfall = 2.0 * r_min - r_a2
    floor = 0.0 if shortfall <= 0 else min(min_power_for_rate(shortfall, w_f, a), P)
    if floor >= P * (1.0 - _BUDGET_SNAP):
        floor = P
    return ConcaveSplitProblem(weight_a=w_f, coef_a=a,
                               weight_b=0.5 * spectrum.total_bandwidth_hz, coef_b=c,
                               budget_w=P, floor_a_w=floor)


def tdd_optimal_allocation(gains: LinkGains, s1: SatelliteNode, s2: SatelliteNode,
                           ue: UserTerminal, spectrum: SpectrumPlan) -> PowerAllocation:
    """Optimal split of ``P_S1`` in the phase where S1 serves both UE and S2.

    Raises
    ------
    InfeasibleError
        If the average access rate cannot reach the minimum even with the
        whole budget on access; carries the best achievable average.
    """
    p_a, p_i = solve_split(tdd_problem(gains, s1, s2, ue, spectrum))
    return PowerAllocation(p_access_w=p_a, p_isl_w=p_i)


def tdd_evaluate(gains: LinkGains, s1: SatelliteNode, s2: SatelliteNode,
                 ue: UserTerminal, spectrum: SpectrumPlan) -> TddResult:
    alloc = tdd_optimal_allocation(gains, s1, s2, ue, spectrum)
    r_a1, r_a2 = tdd_access_rates(gains, alloc, s1, s2, spectrum)
    r_isl = tdd_isl_rate(gains, alloc, ue, spectrum)
    return TddResult(
        sinr_ue_phase0=tdd_ue_sinr(gains, alloc.p_access_w, s2, spectrum, TddPhase.S2_RECEIVING),
        sinr_ue_phase1=tdd_ue_sinr(gains, s1.total_power_w, s2, spectrum, TddPhase.S2_TRANSMITTING),
        sinr_s2=tdd_s2_sinr(gains, alloc.p_isl_w, ue, spectrum),
        rate_access1_bps=r_a1,
        rate_access2_bps=r_a2,
        rate_isl_bps=r_isl,
        rate_total_bps=r_isl + 0.5 * (r_a1 + r_a2),
        allocation=alloc,
    )
