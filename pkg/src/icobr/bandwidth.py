"""Optimization of the relay-band bandwidth split.

The total relay bandwidth ratio ``eta`` is fixed; the optimizer chooses
how much of it the relay spends listening (``eta_mac``) versus
transmitting (``eta_bc = eta - eta_mac``), maximizing either an
achievable sum rate or the sum-rate upper bound.  The inner power-split
optimization reruns for every candidate allocation (nested search:
501-point outer grid plus refinement, default inner settings).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .achievability import (AchievableResult, RelayMode, max_sum_rate,
                            max_sum_rate_value)
from .channel import Scenario
from .numerics import DEFAULT_TOL, maximize_scalar
from .outerbound import UpperBound, _check_regime, sum_rate_upper_bound

OUTER_GRID_N = 501


class BandwidthObjective(Enum):
    ACHIEVABLE_SR = "achievable_sr"
    ACHIEVABLE_IF = "achievable_if"
    UPPER_BOUND = "upper_bound"


_MODE_OF = {
    BandwidthObjective.ACHIEVABLE_SR: RelayMode.SIGNAL_RELAYING,
    BandwidthObjective.ACHIEVABLE_IF: RelayMode.INTERFERENCE_FORWARDING,
}


@dataclass(frozen=True)
class BandwidthResult:
    """Optimal bandwidth allocation for one objective.  ``inner`` is the
    full result (achievable or bound) re-evaluated at the optimum."""

    eta_mac_star: float
    eta_bc_star: float
    rate: float
    objective: BandwidthObjective
    inner: AchievableResult | UpperBound


def optimize_bandwidth(sc: Scenario, eta: float,
                       objective: BandwidthObjective) -> BandwidthResult:
    """Maximize the chosen objective over eta_mac in [0, eta].

    Any bandwidth split already on the scenario is ignored.  Regime
    violations surface immediately for the upper-bound objective.
    """
    if not eta > 0:
        raise ValueError(f"eta must be > 0, got {eta!r}")
    objective = BandwidthObjective(objective)
    if objective is BandwidthObjective.UPPER_BOUND:
        _check_regime(sc)

    def evaluate(eta_mac: float) -> float:
        trial = sc.with_bandwidth(eta_mac, eta - eta_mac)
        if objective is BandwidthObjective.UPPER_BOUND:
            return sum_rate_upper_bound(trial).rate
        return max_sum_rate_value(trial, _MODE_OF[objective])[0]

    res = maximize_scalar(evaluate, 0.0, eta, OUTER_GRID_N, DEFAULT_TOL)
    eta_mac_star = res.x_star
    best = sc.with_bandwidth(eta_mac_star, eta - eta_mac_star)
    if objective is BandwidthObjective.UPPER_BOUND:
        inner: AchievableResult | UpperBound = sum_rate_upper_bound(best)
        rate = inner.rate
    else:
        inner = max_sum_rate(best, _MODE_OF[objective])
        rate = inner.sum_rate
    return BandwidthResult(eta_mac_star=eta_mac_star, eta_bc_star=eta - eta_mac_star,
                           rate=rate, objective=objective, inner=inner)
