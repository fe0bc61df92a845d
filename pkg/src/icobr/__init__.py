"""Rate analysis for the Gaussian interference channel with a
half-duplex out-of-band relay: achievable sum rates and regions,
sum-rate upper bounds, optimality certificates, and relay power- and
bandwidth-split optimization."""

from .achievability import (AchievableResult, BottleneckCase,
                            ConditionsNotMetError, RateSplit, RateTerms,
                            RelayMode, SeparableConditions, SumCapacity,
                            asymptotic_sum_capacity, closed_form_region,
                            max_sum_rate, max_sum_rate_value,
                            outer_rate_bounds, project_split_region,
                            rate_terms, separable_conditions,
                            separable_sum_capacity, split_rate_system,
                            sum_rate_at, sum_rate_curve)
from .bandwidth import BandwidthObjective, BandwidthResult, optimize_bandwidth
from .channel import (BandwidthSplit, ChannelGains, PowerSplit, Powers,
                      RegimeFlags, Scenario, gaussian_capacity, regime_flags,
                      scenario_from_dict, scenario_from_json, scenario_to_dict,
                      strong_interference_threshold)
from .numerics import OptResult, maximize_scalar
from .outerbound import (BoundBreakdown, GapReport, RegimeError, UpperBound,
                         bound_terms, gap_report, sum_rate_upper_bound)
from .regions import (InfeasibleSystemError, LinearRateSystem, contains,
                      fm_eliminate, format_system, make_system, max_linear,
                      membership_disagreements, project, prune_redundant)

__version__ = "0.1.0"
