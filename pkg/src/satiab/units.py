"""Physical constants and decibel conversions.

Everything inside the package works in SI linear units. These helpers
exist for the configuration boundary and for printed summaries.
"""

from __future__ import annotations

import math

from .errors import DomainError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact
EARTH_RADIUS_M = 6_371_000.0


def to_db(value: float) -> float:
    """Linear power ratio to decibels."""
    if not value > 0:
        raise DomainError(f"cannot convert non-positive value {value!r} to dB")
    return 10.0 * math.log10(value)


def from_db(value_db: float) -> float:
    """Decibels to a linear power ratio."""
    return 10.0 ** (value_db / 10.0)


def dbm_to_watts(value_dbm: float) -> float:
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def watts_to_dbm(value_w: float) -> float:
    if not value_w > 0:
        raise DomainError(f"cannot convert non-positive power {value_w!r} W to dBm")
    return 10.0 * math.log10(value_w) + 30.0
