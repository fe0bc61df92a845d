"""Achievable rates for the relay-aided interference channel.

The coding scheme splits the two source messages into five streams:

* ``r1p``   source 1 private stream, sent on the IC only;
* ``r1r``   source 1 independent stream, decode-and-forwarded by the relay;
* ``r2cp``  source 2 common stream sent on both the IC and the relay band
            (the relay forwards it to destination 1 so that interference
            can be stripped there);
* ``r2cpp`` source 2 common stream sent on the IC only;
* ``r2r``   source 2 independent stream via the relay.

Eight linear constraints on these stream rates describe what the IC, the
relay multiple-access phase and the relay broadcast phase can carry
(``split_rate_system``).  Projecting the stream rates onto the per-user
pair (r1, r2) gives the achievable region; ``closed_form_region`` states
that projection directly, and the generic Fourier-Motzkin machinery in
:mod:`icobr.regions` must reproduce it (``project_split_region``).

Sum-rate optimization over the relay power split runs on closed-form
evaluators (exact linear-programming values, cross-checked in the test
suite against :func:`icobr.regions.max_linear`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import PowerSplit, Scenario, gaussian_capacity, regime_flags
from .numerics import DEFAULT_GRID_N, DEFAULT_TOL, maximize_scalar
from .regions import LinearRateSystem, make_system, max_linear, project

SPLIT_VARS = ("r1p", "r1r", "r2cp", "r2cpp", "r2r")
RATE_VARS = ("r1", "r2")

#: slack used when pinning values during lexicographic split extraction
_PIN_SLACK = 0.0


class RelayMode(Enum):
    """What source 2 may send through the relay: only its independent
    stream (signal relaying), or additionally its common stream
    (interference forwarding)."""

    SIGNAL_RELAYING = "sr"
    INTERFERENCE_FORWARDING = "if"


class BottleneckCase(Enum):
    """Which relay-band phase limits the relay path in the separable
    optimality conditions."""

    BC = "bc"
    MAC = "mac"
    NONE = "none"


def _cap(x: float) -> float:
    # scalar fast path; gaussian_capacity handles validation/arrays
    return 0.5 * math.log2(1.0 + x)


@dataclass(frozen=True)
class RateTerms:
    """Per-link capacity terms of one scenario (bits per IC channel use).

    ``ic_direct``..``mac_joint`` are the constant right-hand sides of the
    split-rate constraints; the two broadcast-phase terms depend on the
    relay power split and are exposed as methods.
    """

    ic_direct: float      # C(P1)
    ic_joint: float       # C(P1 + a21^2 P2)
    ic_faded: float       # C(P2 / (1 + a12^2 P1))
    p2_solo: float        # C(P2), interference-free
    mac1: float           # eta_mac C(b1^2 P1R)
    mac2: float           # eta_mac C(b2^2 P2R)
    mac2_cond: float      # eta_mac C(b2^2 P2R / (1 + b1^2 P1R))
    mac_joint: float      # eta_mac C(b1^2 P1R + b2^2 P2R)
    snr_bc1: float        # c1^2 PR
    snr_bc2: float        # c2^2 PR
    eta_bc: float

    def bc1(self, xi):
        """Broadcast rate toward destination 1 at power fraction xi."""
        return self.eta_bc * gaussian_capacity(np.asarray(xi, dtype=float) * self.snr_bc1)

    def bc2(self, xi, xi_bar=None):
        """Broadcast rate toward destination 2, decoded under the
        destination-1 stream treated as noise."""
        xi = np.asarray(xi, dtype=float)
        if xi_bar is None:
            xi_bar = 1.0 - xi
        snr = self.snr_bc2 * np.asarray(xi_bar, dtype=float) / (1.0 + self.snr_bc2 * xi)
        return self.eta_bc * gaussian_capacity(snr)

    @property
    def bc1_full(self) -> float:
        """Broadcast rate toward destination 1 with the full relay power."""
        return self.eta_bc * gaussian_capacity(self.snr_bc1)


def rate_terms(sc: Scenario) -> RateTerms:
    """Evaluate every capacity term of a scenario once."""
    g, p, bw = sc.gains, sc.powers, sc.require_bw()
    s_mac1 = g.b1 ** 2 * p.P1R
    s_mac2 = g.b2 ** 2 * p.P2R
    return RateTerms(
        ic_direct=_cap(p.P1),
        ic_joint=_cap(p.P1 + g.a21 ** 2 * p.P2),
        ic_faded=_cap(p.P2 / (1.0 + g.a12 ** 2 * p.P1)),
        p2_solo=_cap(p.P2),
        mac1=bw.eta_mac * _cap(s_mac1),
        mac2=bw.eta_mac * _cap(s_mac2),
        mac2_cond=bw.eta_mac * _cap(s_mac2 / (1.0 + s_mac1)),
        mac_joint=bw.eta_mac * _cap(s_mac1 + s_mac2),
        snr_bc1=g.c1 ** 2 * p.PR,
        snr_bc2=g.c2 ** 2 * p.PR,
        eta_bc=bw.eta_bc,
    )


def _as_power_split(xi) -> PowerSplit:
    return xi if isinstance(xi, PowerSplit) else PowerSplit(float(xi))


def split_rate_system(sc: Scenario, xi) -> LinearRateSystem:
    """The eight constraints on the five stream rates, in fixed order:

    0. r1p                 <= C(P1)
    1. r1p + r2cpp         <= C(P1 + a21^2 P2)
    2. r2cp + r2cpp        <= C(P2 / (1 + a12^2 P1))
    3. r1r                 <= eta_mac C(b1^2 P1R)
    4. r2cp + r2r          <= eta_mac C(b2^2 P2R)
    5. r1r + r2cp + r2r    <= eta_mac C(b1^2 P1R + b2^2 P2R)
    6. r1r + r2cp          <= eta_bc C(c1^2 xi PR)
    7. r2r                 <= eta_bc C(c2^2 xi_bar PR / (1 + c2^2 xi PR))
    """
    ps = _as_power_split(xi)
    t = rate_terms(sc)
    return make_system(SPLIT_VARS, [
        ({"r1p": 1}, t.ic_direct),
        ({"r1p": 1, "r2cpp": 1}, t.ic_joint),
        ({"r2cp": 1, "r2cpp": 1}, t.ic_faded),
        ({"r1r": 1}, t.mac1),
        ({"r2cp": 1, "r2r": 1}, t.mac2),
        ({"r1r": 1, "r2cp": 1, "r2r": 1}, t.mac_joint),
        ({"r1r": 1, "r2cp": 1}, t.bc1(ps.xi)),
        ({"r2r": 1}, t.bc2(ps.xi, ps.xi_bar)),
    ])


def _mode_rows(sys: LinearRateSystem, mode: RelayMode) -> LinearRateSystem:
    """Append the r2cp = 0 equality pair in signal-relaying mode."""
    if mode is RelayMode.INTERFERENCE_FORWARDING:
        return sys
    j = sys.index("r2cp")
    pin = np.zeros(len(sys.vars))
    pin[j] = 1.0
    coeffs = np.vstack([sys.coeffs, pin, -pin])
    rhs = np.concatenate([sys.rhs, [0.0, 0.0]])
    return LinearRateSystem(sys.vars, coeffs, rhs)


def closed_form_region(sc: Scenario, xi) -> LinearRateSystem:
    """Exact closed form of the (r1, r2) projection of the split-rate
    system, with interference forwarding allowed.

    With A..H denoting the eight constraint bounds in the order of
    :func:`split_rate_system` (A=ic_direct, B=ic_joint, C=ic_faded,
    D=mac1, E=mac2, F=mac_joint, G=bc1, H=bc2), the projection is

        r1      <= A + D            r1      <= A + G
        r2      <= C + H            r2      <= C + E        r2 <= B + E
        r1 + r2 <= B + G + H        r1 + r2 <= B + F
        r1 + r2 <= B + E + G        r1 + r2 <= A + C + F

    The first row of each group plus the two sum rows (B+G+H, B+F) are
    the usual headline bounds (:func:`outer_rate_bounds`); the remaining
    rows are the facets those bounds miss, and without them the region
    would overstate what the scheme achieves whenever a relay pipe is
    individually binding.  Derived by hand elimination and cross-checked
    against :func:`project_split_region` in the test suite.
    """
    ps = _as_power_split(xi)
    t = rate_terms(sc)
    a, b, c = t.ic_direct, t.ic_joint, t.ic_faded
    d, e, f = t.mac1, t.mac2, t.mac_joint
    g, h = t.bc1(ps.xi), t.bc2(ps.xi, ps.xi_bar)
    return make_system(RATE_VARS, [
        ({"r1": 1}, a + d),
        ({"r1": 1}, a + g),
        ({"r2": 1}, c + h),
        ({"r2": 1}, c + e),
        ({"r2": 1}, b + e),
        ({"r1": 1, "r2": 1}, b + g + h),
        ({"r1": 1, "r2": 1}, b + f),
        ({"r1": 1, "r2": 1}, b + e + g),
        ({"r1": 1, "r2": 1}, a + c + f),
    ])


def outer_rate_bounds(sc: Scenario, xi) -> LinearRateSystem:
    """The four headline bounds on (r1, r2): per-user caps plus the two
    sum caps.  Every point of :func:`closed_form_region` satisfies them,
    and they are tight whenever no single relay pipe binds alone (in
    particular throughout the benchmark sweeps), but in general they are
    an outer relaxation of the achievable region, not the region itself.
    """
    ps = _as_power_split(xi)
    t = rate_terms(sc)
    g, h = t.bc1(ps.xi), t.bc2(ps.xi, ps.xi_bar)
    return make_system(RATE_VARS, [
        ({"r1": 1}, t.ic_direct + t.mac1),
        ({"r2": 1}, t.ic_faded + h),
        ({"r1": 1, "r2": 1}, t.ic_joint + g + h),
        ({"r1": 1, "r2": 1}, t.ic_joint + t.mac_joint),
    ])


def project_split_region(sc: Scenario, xi,
                         mode: RelayMode = RelayMode.INTERFERENCE_FORWARDING
                         ) -> LinearRateSystem:
    """Project the split-rate system onto (r1, r2) with the generic
    Fourier-Motzkin machinery, after adding the defining equalities
    r1 = r1p + r1r and r2 = r2cp + r2cpp + r2r."""
    base = _mode_rows(split_rate_system(sc, xi), mode)
    n = len(SPLIT_VARS)
    variables = SPLIT_VARS + RATE_VARS
    m = base.n_rows
    coeffs = np.zeros((m + 4, n + 2))
    coeffs[:m, :n] = base.coeffs
    rhs = np.concatenate([base.rhs, np.zeros(4)])
    # r1p + r1r - r1 = 0 and r2cp + r2cpp + r2r - r2 = 0 as opposing pairs
    r1_row = np.array([1.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0])
    r2_row = np.array([0.0, 0.0, 1.0, 1.0, 1.0, 0.0, -1.0])
    coeffs[m] = r1_row
    coeffs[m + 1] = -r1_row
    coeffs[m + 2] = r2_row
    coeffs[m + 3] = -r2_row
    return project(LinearRateSystem(variables, coeffs, rhs), set(RATE_VARS))


def sum_rate_at(sc: Scenario, xi, mode: RelayMode) -> float:
    """Maximum of r1 + r2 over the split-rate system at one power split,
    computed through :func:`icobr.regions.max_linear` (the generic
    linear-programming route)."""
    sys = _mode_rows(split_rate_system(sc, xi), mode)
    return max_linear(sys, np.ones(len(SPLIT_VARS)))


# ---------------------------------------------------------------------------
# closed-form sum-rate evaluators (exact LP values, vectorized over xi)

def _sum_rate_terms_np(t: RateTerms, xis: np.ndarray, mode: RelayMode) -> np.ndarray:
    a, b, c = t.ic_direct, t.ic_joint, t.ic_faded
    d, e, f = t.mac1, t.mac2, t.mac_joint
    g = t.eta_bc * 0.5 * np.log2(1.0 + t.snr_bc1 * xis)
    h = t.eta_bc * 0.5 * np.log2(1.0 + t.snr_bc2 * (1.0 - xis) / (1.0 + t.snr_bc2 * xis))
    dg = np.minimum(d, g)
    if mode is RelayMode.INTERFERENCE_FORWARDING:
        m1 = a + dg
        m2 = np.minimum(c + np.minimum(e, h), b + e)
        s = np.minimum.reduce([b + g + h, np.full_like(g, b + f), b + e + g,
                               np.full_like(g, a + c + f)])
    else:
        m1 = a + dg
        m2 = min(c, b) + np.minimum(e, h)
        s = np.minimum.reduce([np.full_like(g, b + f), b + dg + h, b + e + g,
                               np.full_like(g, a + c + f)])
    return np.minimum(m1 + m2, s)


def _sum_rate_scalar(t: RateTerms, xi: float, mode: RelayMode) -> float:
    a, b, c = t.ic_direct, t.ic_joint, t.ic_faded
    d, e, f = t.mac1, t.mac2, t.mac_joint
    g = t.eta_bc * _cap(t.snr_bc1 * xi)
    h = t.eta_bc * _cap(t.snr_bc2 * (1.0 - xi) / (1.0 + t.snr_bc2 * xi))
    dg = min(d, g)
    if mode is RelayMode.INTERFERENCE_FORWARDING:
        m1m2 = a + dg + min(c + min(e, h), b + e)
        s = min(b + g + h, b + f, b + e + g, a + c + f)
    else:
        m1m2 = a + dg + min(c, b) + min(e, h)
        s = min(b + f, b + dg + h, b + e + g, a + c + f)
    return min(m1m2, s)


def sum_rate_curve(sc: Scenario, xis, mode: RelayMode) -> np.ndarray:
    """Closed-form maximum sum rate for an array of power-split values
    (always with xi_bar = 1 - xi).  Equals :func:`sum_rate_at` pointwise."""
    t = rate_terms(sc)
    return _sum_rate_terms_np(t, np.asarray(xis, dtype=float), mode)


def max_sum_rate_value(sc: Scenario, mode: RelayMode) -> tuple[float, float]:
    """Maximize the sum rate over the relay power split xi in [0, 1].

    Returns (sum_rate, xi_star).  Grid of 1001 points plus golden-section
    refinement, tolerance 1e-9 in xi; xi_bar = 1 - xi throughout (the
    broadcast rates are nondecreasing in xi_bar, so nothing is lost).
    """
    t = rate_terms(sc)
    res = maximize_scalar(
        lambda x: _sum_rate_scalar(t, x, mode),
        0.0, 1.0, DEFAULT_GRID_N, DEFAULT_TOL,
        vector_f=lambda xs: _sum_rate_terms_np(t, xs, mode),
    )
    return res.f_star, res.x_star


@dataclass(frozen=True)
class RateSplit:
    """Per-stream rates (bits per IC channel use), all nonnegative."""

    r1p: float
    r1r: float
    r2cp: float
    r2cpp: float
    r2r: float

    def __post_init__(self):
        for name in SPLIT_VARS:
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def r1(self) -> float:
        return self.r1p + self.r1r

    @property
    def r2(self) -> float:
        return self.r2cp + self.r2cpp + self.r2r


@dataclass(frozen=True)
class AchievableResult:
    """Optimized achievable sum rate with the power split and an optimal
    stream split attaining it."""

    sum_rate: float
    xi_star: PowerSplit
    split: RateSplit
    mode: RelayMode


#: preference order for breaking ties among optimal stream splits:
#: IC transmission and signal relaying ahead of interference forwarding
_LEX_ORDER = ("r1p", "r2cpp", "r2r", "r1r", "r2cp")


def _pin(sys: LinearRateSystem, objective: np.ndarray, value: float) -> LinearRateSystem:
    coeffs = np.vstack([sys.coeffs, objective, -objective])
    rhs = np.concatenate([sys.rhs, [value + _PIN_SLACK, -(value - _PIN_SLACK)]])
    return LinearRateSystem(sys.vars, coeffs, rhs)


def _lexicographic_split(sys: LinearRateSystem, sum_rate: float) -> RateSplit:
    """Among the maximizers of r1 + r2, pick the lexicographically largest
    stream vector in the order of _LEX_ORDER, by sequentially maximizing
    and pinning one coordinate at a time."""
    ones = np.ones(len(SPLIT_VARS))
    sys = _pin(sys, ones, sum_rate)
    values = {}
    for name in _LEX_ORDER:
        obj = np.zeros(len(SPLIT_VARS))
        obj[SPLIT_VARS.index(name)] = 1.0
        values[name] = max_linear(sys, obj)
        sys = _pin(sys, obj, values[name])
    # clamp float dust from the eliminations
    return RateSplit(**{k: max(0.0, v) for k, v in values.items()})


def max_sum_rate(sc: Scenario, mode: RelayMode) -> AchievableResult:
    """Optimized achievable sum rate plus an optimal stream split.

    The split is recovered at the optimal xi by sequential linear
    maximization, preferring IC transmission and signal relaying over
    interference forwarding whenever the optimum is not unique.
    """
    _, xi_star = max_sum_rate_value(sc, mode)
    ps = PowerSplit(xi_star)
    sys = _mode_rows(split_rate_system(sc, ps), mode)
    # anchor the pinning chain to the LP value so the chain stays feasible
    lp_value = max_linear(sys, np.ones(len(SPLIT_VARS)))
    split = _lexicographic_split(sys, lp_value)
    result = AchievableResult(sum_rate=lp_value, xi_star=ps, split=split, mode=mode)
    if abs(result.sum_rate - (split.r1 + split.r2)) > 1e-9:
        raise RuntimeError(
            f"split extraction drifted: {result.sum_rate} vs {split.r1 + split.r2}"
        )
    return result


# ---------------------------------------------------------------------------
# separable-coding optimality conditions and sum capacities

class ConditionsNotMetError(ValueError):
    """Raised when a sum-capacity expression is requested outside the
    conditions that make it valid; carries the failed conditions."""

    def __init__(self, failed: list[str]):
        self.failed = list(failed)
        super().__init__("optimality conditions not met: " + "; ".join(self.failed))


@dataclass(frozen=True)
class SeparableConditions:
    """Evaluation of the conditions under which separable coding with
    pure signal relaying achieves the sum capacity.

    ``case`` is BC when the relay-to-destination-1 link is the bottleneck
    of the source-1 relay path (ties included), MAC when the reverse
    strict inequality holds and the source-2 relay path clears the
    broadcast rate at the optimizing power split, and NONE otherwise or
    whenever a regime flag fails.
    """

    applicable: bool
    case: BottleneckCase
    weak_a12: bool
    bc_ordered: bool
    strong_a21: bool
    mac1_rate: float        # eta_mac C(b1^2 P1R)
    bc1_full_rate: float    # eta_bc C(c1^2 PR)
    mac2_cond_rate: float   # eta_mac C(b2^2 P2R / (1 + b1^2 P1R))
    bc2_rate_at_star: float # eta_bc C(c2^2 xi_bar* PR / (1 + c2^2 xi* PR))
    xi_star: float
    candidate_rate: float   # the sum-capacity expression value

    def failed_conditions(self) -> list[str]:
        failed = []
        if not self.weak_a12:
            failed.append("a12 <= 1")
        if not self.bc_ordered:
            failed.append("c1 >= c2")
        if not self.strong_a21:
            failed.append("a21 >= strong-interference threshold")
        if self.case is BottleneckCase.NONE:
            failed.append(
                "relay MAC phase clears the broadcast rate "
                f"({self.mac2_cond_rate:.9g} < {self.bc2_rate_at_star:.9g})"
            )
        return failed


def _separable_objective(t: RateTerms):
    w = t.ic_direct + t.ic_faded

    def scalar(xi: float) -> float:
        g = t.eta_bc * _cap(t.snr_bc1 * xi)
        h = t.eta_bc * _cap(t.snr_bc2 * (1.0 - xi) / (1.0 + t.snr_bc2 * xi))
        return w + min(t.mac1, g) + h

    def vector(xis: np.ndarray) -> np.ndarray:
        g = t.eta_bc * 0.5 * np.log2(1.0 + t.snr_bc1 * xis)
        h = t.eta_bc * 0.5 * np.log2(
            1.0 + t.snr_bc2 * (1.0 - xis) / (1.0 + t.snr_bc2 * xis))
        return w + np.minimum(t.mac1, g) + h

    return scalar, vector


def separable_conditions(sc: Scenario) -> SeparableConditions:
    """Classify a scenario against the separable-coding optimality
    conditions.

    The second (MAC-side) condition is self-referential: the optimizing
    power split xi* is found first by maximizing the candidate sum-rate
    expression, then the condition is tested at xi*.  If it fails, the
    case is NONE and no capacity claim is made.
    """
    flags = regime_flags(sc)
    t = rate_terms(sc)
    scalar, vector = _separable_objective(t)
    opt = maximize_scalar(scalar, 0.0, 1.0, DEFAULT_GRID_N, DEFAULT_TOL, vector_f=vector)
    bc2_at_star = t.bc2(opt.x_star)

    applicable = flags.weak_a12 and flags.bc_ordered and flags.strong_a21
    if not applicable:
        case = BottleneckCase.NONE
    elif t.mac1 >= t.bc1_full:
        case = BottleneckCase.BC
    elif t.mac2_cond >= bc2_at_star:
        case = BottleneckCase.MAC
    else:
        case = BottleneckCase.NONE

    return SeparableConditions(
        applicable=applicable,
        case=case,
        weak_a12=flags.weak_a12,
        bc_ordered=flags.bc_ordered,
        strong_a21=flags.strong_a21,
        mac1_rate=t.mac1,
        bc1_full_rate=t.bc1_full,
        mac2_cond_rate=t.mac2_cond,
        bc2_rate_at_star=bc2_at_star,
        xi_star=opt.x_star,
        candidate_rate=opt.f_star,
    )


@dataclass(frozen=True)
class SumCapacity:
    rate: float
    case: BottleneckCase
    xi_star: float


def separable_sum_capacity(sc: Scenario) -> SumCapacity:
    """Sum capacity under the separable-coding optimality conditions.

    BC case:  C(P1) + C(P2/(1+a12^2 P1)) + eta_bc C(c1^2 PR).
    MAC case: max over xi of C(P1) + C(P2/(1+a12^2 P1))
              + min(eta_mac C(b1^2 P1R), eta_bc C(c1^2 xi PR))
              + eta_bc C(c2^2 xi_bar PR / (1 + c2^2 xi PR)).

    Raises ConditionsNotMetError (with the failed conditions) when
    neither condition set holds.
    """
    conds = separable_conditions(sc)
    if conds.case is BottleneckCase.NONE:
        raise ConditionsNotMetError(conds.failed_conditions())
    if conds.case is BottleneckCase.BC:
        t = rate_terms(sc)
        value = t.ic_direct + t.ic_faded + t.bc1_full
        return SumCapacity(rate=value, case=conds.case, xi_star=1.0)
    return SumCapacity(rate=conds.candidate_rate, case=conds.case, xi_star=conds.xi_star)


def asymptotic_sum_capacity(sc: Scenario) -> float:
    """Sum-capacity limit as the source-2-to-relay and relay-to-
    destination-1 gains grow without bound:
    C(P1) + C(P2/(1+a12^2 P1)) + eta_mac C(b1^2 P1R) + eta_bc C(c2^2 PR).
    """
    t = rate_terms(sc)
    return t.ic_direct + t.ic_faded + t.mac1 + t.eta_bc * gaussian_capacity(t.snr_bc2)
