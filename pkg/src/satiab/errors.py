"""Exception types shared across the package."""

from __future__ import annotations


class IabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(IabError, ValueError):
    """An argument lies outside the domain of a formula."""


class IslNotVisibleError(IabError):
    """The inter-satellite link has no line of sight (slant range too long)."""

    def __init__(self, d_isl_m: float, d_isl_max_m: float):
        self.d_isl_m = d_isl_m
        self.d_isl_max_m = d_isl_max_m
        super().__init__(
            f"ISL not visible: neighbour slant range {d_isl_m / 1e3:.1f} km exceeds "
            f"maximum line-of-sight range {d_isl_max_m / 1e3:.1f} km"
        )


class InfeasibleError(IabError):
    """The minimum access rate cannot be met with the available power."""

    def __init__(self, required_bps: float, max_achievable_bps: float, what: str = "access rate"):
        self.required_bps = required_bps
        self.max_achievable_bps = max_achievable_bps
        super().__init__(
            f"infeasible: required {what} {required_bps / 1e6:.6g} Mbit/s exceeds "
            f"maximum achievable {max_achievable_bps / 1e6:.6g} Mbit/s"
        )


class ConfigError(IabError):
    """One or more configuration problems; ``problems`` lists every one."""

    def __init__(self, problems: list[str] | str):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
