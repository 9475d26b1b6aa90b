"""LEO satellite integrated access and backhaul (IAB) with inter-satellite links.

One satellite S1 shares its spectrum between an FDD access link to a
handheld user and a backhaul ISL to its neighbour S2, run either in FDD
or in TDD. The package computes the plane geometry, free-space link
gains and the throughput-optimal power split for both backhaul modes.
"""

from .channel import (LinkGains, SatelliteNode, SpectrumPlan, UserTerminal, free_space_gain,
                      isl_path_loss, link_gains, noise_power)
from .config import Scenario, ScenarioConfig, build_scenario, dump_config, load_config, parse_config
from .errors import ConfigError, DomainError, IabError, InfeasibleError, IslNotVisibleError
from .fdd import FddResult, PowerAllocation, fdd_evaluate, fdd_optimal_allocation, fdd_snrs, fdd_throughput
from .geometry import (GeometrySolution, PlaneGeometry, max_slant_range, min_satellites_for_isl,
                       neighbor_slant_range, solve_geometry, ue_to_neighbor_distance)
from .numerics import ConcaveSplitProblem, grid_oracle, min_power_for_rate, solve_split
from .tdd import (TddPhase, TddResult, tdd_access_rates, tdd_evaluate, tdd_isl_rate,
                  tdd_optimal_allocation, tdd_s2_sinr, tdd_ue_sinr)
from .units import dbm_to_watts, from_db, to_db, watts_to_dbm

__version__ = "0.1.0"
