"""Sum-rate upper bound for the relay-aided interference channel.

Valid for weak interference toward destination 2 (a12 <= 1, which lets
the worst-case-noise argument bound the IC pair of mutual informations by
W = C(P1) + C(P2/(1+a12^2 P1))) and an ordered broadcast phase
(c1 >= c2, under which the broadcast-side converse holds).  Three
sum-rate combinations are evaluated:

  T1(xi) = W + eta_bc C(c1^2 xi PR) + eta_bc C(c2^2 xi_bar PR / (1 + c2^2 xi PR))
  T2(xi) = W + eta_mac C(b1^2 P1R)  + eta_bc C(c2^2 xi_bar PR / (1 + c2^2 xi PR))
  T3     = C(P1) + C(P2) + eta_mac C(b1^2 P1R) + eta_mac C(b2^2 P2R)

T1 and T2 are exactly the pairings used in the matching converses of the
separable sum capacities (so equality certificates are attainable); T3 is
an interference-free cut-set cap, independent of xi.  The bound is the
maximum over xi in [0, 1] of min(T1, T2, T3), with xi_bar = 1 - xi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .achievability import RateTerms, RelayMode, max_sum_rate, rate_terms
from .channel import PowerSplit, Scenario
from .numerics import DEFAULT_GRID_N, DEFAULT_TOL, maximize_scalar


class RegimeError(ValueError):
    """The bound derivation is invalid for these gains."""


def _check_regime(sc: Scenario) -> None:
    g = sc.gains
    problems = []
    if g.a12 > 1.0:
        problems.append(f"a12 = {g.a12:.9g} > 1")
    if g.c1 < g.c2:
        problems.append(f"c1 = {g.c1:.9g} < c2 = {g.c2:.9g}")
    if problems:
        raise RegimeError("upper bound not valid here: " + ", ".join(problems))


@dataclass(frozen=True)
class BoundBreakdown:
    """The three sum-rate bound combinations at one power split; ``active``
    is the index (0, 1, 2) of the binding term."""

    t1: float
    t2: float
    t3: float
    active: int
    xi: PowerSplit

    @property
    def value(self) -> float:
        return (self.t1, self.t2, self.t3)[self.active]


def _terms_at(t: RateTerms, xi: float) -> tuple[float, float, float]:
    w = t.ic_direct + t.ic_faded
    g = t.eta_bc * 0.5 * math.log2(1.0 + t.snr_bc1 * xi)
    h = t.eta_bc * 0.5 * math.log2(
        1.0 + t.snr_bc2 * (1.0 - xi) / (1.0 + t.snr_bc2 * xi))
    t3 = t.ic_direct + t.p2_solo + t.mac1 + t.mac2
    return w + g + h, w + t.mac1 + h, t3


def bound_terms(sc: Scenario, xi) -> BoundBreakdown:
    """Evaluate T1, T2, T3 at one power split (xi_bar = 1 - xi; the bound
    is only valid for that choice)."""
    _check_regime(sc)
    ps = xi if isinstance(xi, PowerSplit) else PowerSplit(float(xi))
    t1, t2, t3 = _terms_at(rate_terms(sc), ps.xi)
    active = int(np.argmin([t1, t2, t3]))
    return BoundBreakdown(t1=t1, t2=t2, t3=t3, active=active, xi=ps)


@dataclass(frozen=True)
class UpperBound:
    rate: float
    xi_star: float
    breakdown: BoundBreakdown


def sum_rate_upper_bound(sc: Scenario) -> UpperBound:
    """max over xi in [0, 1] of min(T1, T2, T3)."""
    _check_regime(sc)
    t = rate_terms(sc)
    t3 = t.ic_direct + t.p2_solo + t.mac1 + t.mac2
    w = t.ic_direct + t.ic_faded

    def scalar(xi: float) -> float:
        g = t.eta_bc * 0.5 * math.log2(1.0 + t.snr_bc1 * xi)
        h = t.eta_bc * 0.5 * math.log2(
            1.0 + t.snr_bc2 * (1.0 - xi) / (1.0 + t.snr_bc2 * xi))
        return min(w + min(g, t.mac1) + h, t3)

    def vector(xis: np.ndarray) -> np.ndarray:
        g = t.eta_bc * 0.5 * np.log2(1.0 + t.snr_bc1 * xis)
        h = t.eta_bc * 0.5 * np.log2(
            1.0 + t.snr_bc2 * (1.0 - xis) / (1.0 + t.snr_bc2 * xis))
        return np.minimum(w + np.minimum(g, t.mac1) + h, t3)

    res = maximize_scalar(scalar, 0.0, 1.0, DEFAULT_GRID_N, DEFAULT_TOL, vector_f=vector)
    return UpperBound(rate=res.f_star, xi_star=res.x_star,
                      breakdown=bound_terms(sc, res.x_star))


@dataclass(frozen=True)
class GapReport:
    """Achievable sum rates against the upper bound for one scenario.

    When the gains fall outside the bound's validity regime the
    achievable side is still reported and ``regime_error`` carries the
    reason the bound column is empty.
    """

    achievable_sr: "object"
    achievable_if: "object"
    upper: UpperBound | None
    gap_sr: float | None
    gap_if: float | None
    capacity_established: bool
    regime_error: str | None


def gap_report(sc: Scenario, tol: float = 1e-6) -> GapReport:
    """Compare both achievable modes with the upper bound."""
    ach_sr = max_sum_rate(sc, RelayMode.SIGNAL_RELAYING)
    ach_if = max_sum_rate(sc, RelayMode.INTERFERENCE_FORWARDING)
    try:
        upper = sum_rate_upper_bound(sc)
    except RegimeError as err:
        return GapReport(achievable_sr=ach_sr, achievable_if=ach_if, upper=None,
                         gap_sr=None, gap_if=None, capacity_established=False,
                         regime_error=str(err))
    gap_sr = upper.rate - ach_sr.sum_rate
    gap_if = upper.rate - ach_if.sum_rate
    return GapReport(
        achievable_sr=ach_sr,
        achievable_if=ach_if,
        upper=upper,
        gap_sr=gap_sr,
        gap_if=gap_if,
        capacity_established=min(gap_sr, gap_if) <= tol,
        regime_error=None,
    )
