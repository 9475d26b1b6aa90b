"""Geometry of evenly spaced LEO satellites sharing one orbital plane.

The ground user sits at the sub-satellite point of the serving satellite
S1, so its distance to S1 is simply the altitude. S2 is the next
satellite along the plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .units import EARTH_RADIUS_M

__all__ = [
    "PlaneGeometry",
    "GeometrySolution",
    "max_slant_range",
    "neighbor_slant_range",
    "min_satellites_for_isl",
    "ue_to_neighbor_distance",
    "solve_geometry",
]


@dataclass(frozen=True)
class PlaneGeometry:
    altitude_m: float
    num_satellites: int
    earth_radius_m: float = EARTH_RADIUS_M

    def __post_init__(self):
        problems = []
        if not self.altitude_m > 0:
            problems.append(f"altitude_m must be > 0, got {self.altitude_m!r}")
        if int(self.num_satellites) != self.num_satellites or self.num_satellites < 2:
            problems.append(f"num_satellites must be an integer >= 2, got {self.num_satellites!r}")
        if not self.earth_radius_m > 0:
            problems.append(f"earth_radius_m must be > 0, got {self.earth_radius_m!r}")
        if problems:
            raise DomainError("; ".join(problems))

    @property
    def orbit_radius_m(self) -> float:
        return self.earth_radius_m + self.altitude_m


@dataclass(frozen=True)
class GeometrySolution:
    d1_m: float
    d2_m: float
    d_isl_m: float
    d_isl_max_m: float
    isl_visible: bool


def max_slant_range(altitude_m: float, earth_radius_m: float = EARTH_RADIUS_M) -> float:
    """Longest ISL between two satellites at equal altitude that keeps line of sight.

    The chord is tangent to the Earth's surface at its midpoint.
    """
    if not altitude_m > 0:
        raise DomainError(f"altitude must be > 0, got {altitude_m!r}")
    return 2.0 * math.sqrt(altitude_m * (altitude_m + 2.0 * earth_radius_m))


def neighbor_slant_range(plane: PlaneGeometry) -> float:
    """Chord length between adjacent satellites of an evenly spaced plane."""
    if plane.num_satellites < 2:
        raise DomainError(f"need at least 2 satellites, got {plane.num_satellites}")
    return 2.0 * plane.orbit_radius_m * math.sin(math.pi / plane.num_satellites)


def min_satellites_for_isl(altitude_m: float, earth_radius_m: float = EARTH_RADIUS_M) -> int:
    """Smallest number of satellites per plane for which neighbours see each other.

    Parameters
    ----------
    altitude_m : float
        Orbital altitude above the Earth's surface (m).
    earth_radius_m : float
        Earth radius (m).

    Returns
    -------
    int
        ``ceil(pi / asin(d_max / (2 (R_E + l_s))))``. A ratio that is an
        integer up to a few ulps is not bumped to the next integer.
    """
    d_max = max_slant_range(altitude_m, earth_radius_m)
    sine = min(1.0, d_max / (2.0 * (earth_radius_m + altitude_m)))
    ratio = math.pi / math.asin(sine)
    nearest = round(ratio)
    if abs(ratio - nearest) <= 4.0 * math.ulp(ratio):
        return int(nearest)
    return math.ceil(ratio)


def ue_to_neighbor_distance(plane: PlaneGeometry) -> float:
    """Distance from the user (below S1) to the neighbouring satellite S2.

    Law of cosines in the triangle Earth centre / user / S2, with the
    central angle between S1 and S2 taken as ``2*pi/N_p``.
    """
    if plane.num_satellites < 2:
        raise DomainError(f"need at least 2 satellites, got {plane.num_satellites}")
    r_orbit = plane.orbit_radius_m
    r_e = plane.earth_radius_m
    angle = 2.0 * math.pi / plane.num_satellites
    return math.sqrt(r_orbit**2 + r_e**2 - 2.0 * r_orbit * r_e * math.cos(angle))


def solve_geometry(plane: PlaneGeometry) -> GeometrySolution:
    d_isl = neighbor_slant_range(plane)
    d_isl_max = max_slant_range(plane.altitude_m, plane.earth_radius_m)
    return GeometrySolution(
        d1_m=plane.altitude_m,
        d2_m=ue_to_neighbor_distance(plane),
        d_isl_m=d_isl,
        d_isl_max_m=d_isl_max,
        isl_visible=d_isl <= d_isl_max,
    )
