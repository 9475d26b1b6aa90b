"""Free-space link budget for the access, interference and ISL links.

All channels are deterministic line-of-sight, so a link is fully
described by its linear power gain ``beta = |h|^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, IslNotVisibleError
from .geometry import GeometrySolution, PlaneGeometry, solve_geometry
from .units import SPEED_OF_LIGHT

__all__ = [
    "SatelliteNode",
    "UserTerminal",
    "SpectrumPlan",
    "LinkGains",
    "free_space_gain",
    "isl_path_loss",
    "link_gains",
    "noise_power",
]


@dataclass(frozen=True)
class SatelliteNode:
    """One LEO node: altitude, antenna gain and total transmit power."""

    altitude_m: float
    antenna_gain_linear: float
    total_power_w: float

    def __post_init__(self):
        if not self.antenna_gain_linear > 0:
            raise DomainError(f"antenna_gain_linear must be > 0, got {self.antenna_gain_linear!r}")
        if not self.total_power_w > 0:
            raise DomainError(f"total_power_w must be > 0, got {self.total_power_w!r}")


@dataclass(frozen=True)
class UserTerminal:
    antenna_gain_linear: float
    uplink_power_w: float
    min_access_rate_bps: float = 0.0

    def __post_init__(self):
        if not self.antenna_gain_linear > 0:
            raise DomainError(f"antenna_gain_linear must be > 0, got {self.antenna_gain_linear!r}")
        if not self.uplink_power_w >= 0:
            raise DomainError(f"uplink_power_w must be >= 0, got {self.uplink_power_w!r}")
        if not self.min_access_rate_bps >= 0:
            raise DomainError(f"min_access_rate_bps must be >= 0, got {self.min_access_rate_bps!r}")


@dataclass(frozen=True)
class SpectrumPlan:
    """Carrier, TDD (total) bandwidth, per-direction FDD bandwidth and noise PSD."""

    carrier_hz: float
    total_bandwidth_hz: float
    fdd_bandwidth_hz: float
    noise_psd_w_per_hz: float

    def __post_init__(self):
        if not self.carrier_hz > 0:
            raise DomainError(f"carrier_hz must be > 0, got {self.carrier_hz!r}")
        if not 0 < self.fdd_bandwidth_hz <= self.total_bandwidth_hz:
            raise DomainError(
                "need 0 < fdd_bandwidth_hz <= total_bandwidth_hz, got "
                f"{self.fdd_bandwidth_hz!r} and {self.total_bandwidth_hz!r}"
            )
        if not self.noise_psd_w_per_hz > 0:
            raise DomainError(f"noise_psd_w_per_hz must be > 0, got {self.noise_psd_w_per_hz!r}")


@dataclass(frozen=True)
class LinkGains:
    """Linear gains S1->UE, S2->UE (interference) and S1->S2 (ISL)."""

    beta_ue1: float
    beta_ue2: float
    beta_isl: float
    geometry: GeometrySolution | None = None

    def __post_init__(self):
        for name in ("beta_ue1", "beta_isl"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise DomainError(f"{name} must lie in (0, 1], got {value!r}")
        # zero is allowed: it models a perfectly suppressed side-lobe
        if not 0 <= self.beta_ue2 <= 1:
            raise DomainError(f"beta_ue2 must lie in [0, 1], got {self.beta_ue2!r}")


def _spreading(distance_m: float, carrier_hz: float) -> float:
    return (4.0 * math.pi * distance_m * carrier_hz / SPEED_OF_LIGHT) ** 2


def free_space_gain(distance_m: float, carrier_hz: float,
                    gain_tx_linear: float = 1.0, gain_rx_linear: float = 1.0) -> float:
    """Friis power gain ``G_tx G_rx / (4 pi d f / c)^2``."""
    if not distance_m > 0:
        raise DomainError(f"distance must be > 0, got {distance_m!r}")
    if not carrier_hz > 0:
        raise DomainError(f"carrier frequency must be > 0, got {carrier_hz!r}")
    return gain_tx_linear * gain_rx_linear / _spreading(distance_m, carrier_hz)


def isl_path_loss(d_isl_m: float, d_isl_max_m: float, carrier_hz: float) -> float:
    """Free-space ISL path loss (linear, >= 1 for realistic ranges).

    Raises
    ------
    IslNotVisibleError
        If ``d_isl_m > d_isl_max_m``; the boundary itself is visible.
    """
    if not d_isl_m > 0 or not d_isl_max_m > 0:
        raise DomainError(f"ISL distances must be > 0, got {d_isl_m!r}, {d_isl_max_m!r}")
    if d_isl_m > d_isl_max_m:
        raise IslNotVisibleError(d_isl_m, d_isl_max_m)
    return _spreading(d_isl_m, carrier_hz)


def link_gains(s1: SatelliteNode, s2: SatelliteNode, ue: UserTerminal,
               plane: PlaneGeometry, spectrum: SpectrumPlan,
               interferer_gain_linear: float | None = None) -> LinkGains:
    """Compute all three link gains for a scenario.

    ``interferer_gain_linear`` is the gain of S2's antenna towards the
    user; by default it equals S2's antenna gain.
    """
    if interferer_gain_linear is None:
        interferer_gain_linear = s2.antenna_gain_linear
    if not interferer_gain_linear >= 0:
        raise DomainError(f"interferer gain must be >= 0, got {interferer_gain_linear!r}")
    for name, node in (("s1", s1), ("s2", s2)):
        if not math.isclose(node.altitude_m, plane.altitude_m, rel_tol=1e-12):
            raise DomainError(
                f"{name} altitude {node.altitude_m!r} m differs from the plane altitude {plane.altitude_m!r} m"
            )

    geo = solve_geometry(plane)
    pl_isl = isl_path_loss(geo.d_isl_m, geo.d_isl_max_m, spectrum.carrier_hz)
    f_c = spectrum.carrier_hz
    return LinkGains(
        beta_ue1=free_space_gain(geo.d1_m, f_c, s1.antenna_gain_linear, ue.antenna_gain_linear),
        beta_ue2=free_space_gain(geo.d2_m, f_c, interferer_gain_linear, ue.antenna_gain_linear),
        beta_isl=s1.antenna_gain_linear * s2.antenna_gain_linear / pl_isl,
        geometry=geo,
    )


def noise_power(spectrum: SpectrumPlan, bandwidth_hz: float) -> float:
    """Thermal noise power ``N_0 W`` in watts."""
    if not bandwidth_hz > 0:
        raise DomainError(f"bandwidth must be > 0, got {bandwidth_hz!r}")
    return spectrum.noise_psd_w_per_hz * bandwidth_hz
