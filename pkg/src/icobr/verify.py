"""Randomized cross-module invariant suite.

Samples scenarios (gains log-uniform in [0.1, 10] with a12 clipped to
weak interference and c1 >= c2 enforced by swapping, powers log-uniform
in [0.1, 100], eta_mac uniform with eta = 1) and checks every structural
invariant the modules promise: capacity identities, Fourier-Motzkin
soundness, closed-form/projection agreement, achievability dominated by
the upper bound, optimality certificates, monotonicity, and optimizer
quality against dense grids.

Each invariant reports the number of checks performed and the first
counterexample if any check fails.  All sampling is seeded, so a given
(seed, n) pair is fully reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import achievability, bandwidth, outerbound
from .achievability import RelayMode
from .channel import (Scenario, gaussian_capacity, scenario_from_dict,
                      scenario_to_dict, strong_interference_threshold)
from .regions import contains, make_system, max_linear, project


@dataclass
class InvariantResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)


@dataclass
class VerificationReport:
    seed: int
    n_scenarios: int
    results: list[InvariantResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)


def sample_scenario(rng: np.random.Generator) -> Scenario:
    a12 = min(float(10.0 ** rng.uniform(-1, 1)), 1.0)
    a21, b1, b2, c1, c2 = (float(10.0 ** rng.uniform(-1, 1)) for _ in range(5))
    if c1 < c2:
        c1, c2 = c2, c1
    P1, P2, P1R, P2R, PR = (float(10.0 ** rng.uniform(-1, 2)) for _ in range(5))
    eta_mac = float(rng.uniform(0.0, 1.0))
    return scenario_from_dict(dict(
        a12=a12, a21=a21, b1=b1, b2=b2, c1=c1, c2=c2,
        P1=P1, P2=P2, P1R=P1R, P2R=P2R, PR=PR,
        eta=1.0, eta_mac=eta_mac, eta_bc=1.0 - eta_mac,
    ))


def _describe(sc: Scenario) -> str:
    return ", ".join(f"{k}={v:.6g}" for k, v in scenario_to_dict(sc).items())


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream])


# ---------------------------------------------------------------------------
# invariants

def check_capacity_shape(seed: int, n: int) -> InvariantResult:
    """gaussian_capacity is strictly increasing and concave on snr > 0."""
    res = InvariantResult("capacity strictly increasing and concave")
    xs = np.logspace(-6, 8, 300)
    caps = gaussian_capacity(xs)
    diffs = np.diff(caps)
    res.checks = 2 * (len(xs) - 1)
    if not np.all(diffs > 0):
        i = int(np.argmin(diffs))
        res.fail(f"not increasing between snr={xs[i]:.6g} and {xs[i + 1]:.6g}")
    slopes = diffs / np.diff(xs)
    if not np.all(np.diff(slopes) < 1e-15):
        i = int(np.argmax(np.diff(slopes)))
        res.fail(f"slope increases near snr={xs[i]:.6g}")
    return res


def check_capacity_chain(seed: int, n: int) -> InvariantResult:
    """C(a) + C(b / (1 + a)) = C(a + b) to 1e-12."""
    res = InvariantResult("capacity chain identity")
    rng = _rng(seed, 1)
    for _ in range(min(n, 1000)):
        a, b = 10.0 ** rng.uniform(-3, 4, size=2)
        lhs = gaussian_capacity(a) + gaussian_capacity(b / (1.0 + a))
        rhs = gaussian_capacity(a + b)
        res.checks += 1
        if abs(lhs - rhs) > 1e-12:
            res.fail(f"a={a:.6g}, b={b:.6g}: {lhs!r} != {rhs!r}")
            break
    return res


def check_threshold_range(seed: int, n: int) -> InvariantResult:
    """Threshold lies in [1, sqrt(1 + P1)] for weak a12."""
    res = InvariantResult("strong-interference threshold range")
    rng = _rng(seed, 2)
    for _ in range(min(n, 500)):
        P1 = float(10.0 ** rng.uniform(-1, 2))
        a12 = float(rng.uniform(0.0, 1.0))
        thr = strong_interference_threshold(P1, a12)
        res.checks += 1
        if not (1.0 - 1e-12 <= thr <= math.sqrt(1.0 + P1) + 1e-12):
            res.fail(f"P1={P1:.6g}, a12={a12:.6g}: threshold {thr!r}")
            break
    return res


def check_fm_projection_soundness(seed: int, n: int) -> InvariantResult:
    """Membership in the projected split-rate region agrees with a
    brute-force grid search over the stream splits, away from the
    boundary."""
    res = InvariantResult("projection matches brute-force split search")
    rng = _rng(seed, 3)
    n_scen = max(2, min(12, n // 100))
    for _ in range(n_scen):
        sc = sample_scenario(rng)
        xi = float(rng.uniform())
        proj = achievability.project_split_region(sc, xi)
        t = achievability.rate_terms(sc)
        bounds = np.array([t.ic_direct, t.ic_joint, t.ic_faded, t.mac1, t.mac2,
                           t.mac_joint, float(t.bc1(xi)), float(t.bc2(xi))])
        rmax = max(bounds[0] + max(bounds[3], bounds[6]),
                   bounds[2] + max(bounds[4], bounds[7]), 0.05) * 1.1
        pts = rng.uniform(0.0, rmax, size=(150, 2))
        # oracle: grid over (r1r, r2cp, r2r); r1p and r2cpp follow from the sums
        m = 33
        btol = 3.0 * rmax / (m - 1)
        for r1, r2 in pts:
            res.checks += 1
            x2 = np.linspace(0.0, r1, m)
            x3 = np.linspace(0.0, r2, m)
            x5 = np.linspace(0.0, r2, m)
            X2, X3, X5 = np.meshgrid(x2, x3, x5, indexing="ij")
            X1, X4 = r1 - X2, r2 - X3 - X5
            ok = (X4 >= 0)
            ok &= (X1 <= bounds[0]) & (X1 + X4 <= bounds[1]) & (X3 + X4 <= bounds[2])
            ok &= (X2 <= bounds[3]) & (X3 + X5 <= bounds[4])
            ok &= (X2 + X3 + X5 <= bounds[5]) & (X2 + X3 <= bounds[6]) & (X5 <= bounds[7])
            oracle_in = bool(np.any(ok))
            if oracle_in and not contains(proj, (r1, r2), tol=1e-9):
                res.fail(f"split exists but projection excludes ({r1:.6g}, {r2:.6g}) "
                         f"for xi={xi:.6g}, {_describe(sc)}")
                return res
            if not oracle_in and contains(proj, (r1, r2), tol=-btol):
                res.fail(f"projection strictly contains ({r1:.6g}, {r2:.6g}) but no "
                         f"split found (grid {m}) for xi={xi:.6g}, {_describe(sc)}")
                return res
    return res


def check_fm_order_invariance(seed: int, n: int) -> InvariantResult:
    """The maximum extracted after projection is unchanged (to 1e-9) by
    the elimination order."""
    res = InvariantResult("elimination order invariance")
    rng = _rng(seed, 4)
    for _ in range(4):
        sc = sample_scenario(rng)
        xi = float(rng.uniform())
        sys = achievability.split_rate_system(sc, xi)
        reference = max_linear(sys, np.ones(5))
        # rebuild max_linear's augmented system and project in random orders
        aug_coeffs = np.zeros((sys.n_rows + 2, 6))
        aug_coeffs[: sys.n_rows, :5] = sys.coeffs
        aug_coeffs[sys.n_rows] = [1, 1, 1, 1, 1, -1]
        aug_coeffs[sys.n_rows + 1] = [-1, -1, -1, -1, -1, 1]
        aug_rhs = np.concatenate([sys.rhs, [0.0, 0.0]])
        aug = make_system(sys.vars + ("_s",),
                          list(zip(aug_coeffs.tolist(), aug_rhs.tolist())))
        for _ in range(4):
            order = list(sys.vars)
            rng.shuffle(order)
            projected = project(aug, {"_s"}, order=order)
            col = projected.coeffs[:, 0]
            ub = col > 1e-12
            res.checks += 1
            if not np.any(ub):
                res.fail(f"order {order} lost every upper bound, {_describe(sc)}")
                return res
            value = float(np.min(projected.rhs[ub] / col[ub]))
            if abs(value - reference) > 1e-9:
                res.fail(f"order {order}: {value!r} vs {reference!r}, {_describe(sc)}")
                return res
    return res


def check_closed_form_projection(seed: int, n: int) -> InvariantResult:
    """closed_form_region and the Fourier-Motzkin projection agree on
    membership over a grid, to boundary tolerance 1e-9."""
    res = InvariantResult("closed form equals projected region")
    rng = _rng(seed, 5)
    n_scen = max(3, min(25, n // 40))
    for _ in range(n_scen):
        sc = sample_scenario(rng)
        for xi in (0.0, float(rng.uniform()), 1.0):
            proj = achievability.project_split_region(sc, xi)
            cf = achievability.closed_form_region(sc, xi)
            rmax = max(float(np.max(cf.rhs)), 0.05) * 1.05
            g = np.linspace(0.0, rmax, 50)
            pts = np.stack(np.meshgrid(g, g, indexing="ij"), axis=-1).reshape(-1, 2)
            res.checks += len(pts)
            in_cf = contains(cf, pts, -1e-9)
            out_cf = ~contains(cf, pts, 1e-9)
            in_p = contains(proj, pts, -1e-9)
            out_p = ~contains(proj, pts, 1e-9)
            bad = np.nonzero((in_cf & out_p) | (in_p & out_cf))[0]
            if len(bad):
                p = pts[bad[0]]
                res.fail(f"membership differs at ({p[0]:.6g}, {p[1]:.6g}) "
                         f"xi={xi:.6g}, {_describe(sc)}")
                return res
    return res


def check_sum_rate_routes(seed: int, n: int) -> InvariantResult:
    """Closed-form sum rate equals the linear-programming route to 1e-9."""
    res = InvariantResult("closed-form sum rate equals LP route")
    rng = _rng(seed, 6)
    n_scen = max(3, min(25, n // 40))
    for _ in range(n_scen):
        sc = sample_scenario(rng)
        for xi in (0.0, float(rng.uniform()), 1.0):
            for mode in RelayMode:
                lp = achievability.sum_rate_at(sc, xi, mode)
                cf = float(achievability.sum_rate_curve(sc, [xi], mode)[0])
                res.checks += 1
                if abs(lp - cf) > 1e-9:
                    res.fail(f"xi={xi:.6g} mode={mode.value}: LP {lp!r} vs "
                             f"closed {cf!r}, {_describe(sc)}")
                    return res
    return res


def check_sr_le_if(seed: int, n: int) -> InvariantResult:
    """Signal relaying never beats interference forwarding."""
    res = InvariantResult("signal relaying <= interference forwarding")
    rng = _rng(seed, 7)
    xis = np.linspace(0.0, 1.0, 33)
    for _ in range(min(n, 300)):
        sc = sample_scenario(rng)
        sr = achievability.sum_rate_curve(sc, xis, RelayMode.SIGNAL_RELAYING)
        iff = achievability.sum_rate_curve(sc, xis, RelayMode.INTERFERENCE_FORWARDING)
        res.checks += len(xis)
        if np.any(sr > iff + 1e-12):
            i = int(np.argmax(sr - iff))
            res.fail(f"xi={xis[i]:.6g}: SR {sr[i]!r} > IF {iff[i]!r}, {_describe(sc)}")
            return res
    return res


def check_achievable_le_bound(seed: int, n: int) -> InvariantResult:
    """Both achievable modes stay below the upper bound (a12<=1, c1>=c2)."""
    res = InvariantResult("achievable <= upper bound")
    rng = _rng(seed, 8)
    for _ in range(n):
        sc = sample_scenario(rng)
        upper = outerbound.sum_rate_upper_bound(sc).rate
        for mode in RelayMode:
            ach, _ = achievability.max_sum_rate_value(sc, mode)
            res.checks += 1
            if ach > upper + 1e-9:
                res.fail(f"{mode.value}: achievable {ach!r} > bound {upper!r}, "
                         f"{_describe(sc)}")
                return res
    return res


def check_certificates(seed: int, n: int) -> InvariantResult:
    """When the separable conditions hold, the achievable signal-relaying
    rate, the sum-capacity expression and the upper bound agree to 1e-6."""
    res = InvariantResult("sum-capacity certificates close")
    rng = _rng(seed, 9)
    for _ in range(min(n, 400)):
        sc = sample_scenario(rng)
        conds = achievability.separable_conditions(sc)
        if conds.case is achievability.BottleneckCase.NONE:
            continue
        cap = achievability.separable_sum_capacity(sc).rate
        ach, _ = achievability.max_sum_rate_value(sc, RelayMode.SIGNAL_RELAYING)
        upper = outerbound.sum_rate_upper_bound(sc).rate
        res.checks += 1
        if abs(ach - cap) > 1e-6 or abs(cap - upper) > 1e-6:
            res.fail(f"case {conds.case.value}: achievable {ach!r}, capacity {cap!r}, "
                     f"bound {upper!r}, {_describe(sc)}")
            return res
    return res


_MONOTONE_PARAMS = ("PR", "P1R", "P2R", "b1", "b2", "c1", "c2")
# a12 worsens the channel and a21 never enters the bound, so the
# monotone-improvement checks cover every other gain and power
_BOUND_PARAMS = ("PR", "P1R", "P2R", "b1", "b2", "c1", "c2", "P1", "P2")


def check_achievable_monotone(seed: int, n: int) -> InvariantResult:
    """max_sum_rate is nondecreasing in each relay-side gain and power."""
    res = InvariantResult("achievable monotone in relay links")
    rng = _rng(seed, 10)
    for _ in range(max(3, min(40, n // 25))):
        sc = sample_scenario(rng)
        base, _ = achievability.max_sum_rate_value(sc, RelayMode.INTERFERENCE_FORWARDING)
        for name in _MONOTONE_PARAMS:
            bumped = sc.with_param(name, getattr(
                sc.gains if name in ("b1", "b2", "c1", "c2") else sc.powers, name) * 1.5)
            if name == "c2" and bumped.gains.c2 > bumped.gains.c1:
                continue  # keep the sampled ordering
            up, _ = achievability.max_sum_rate_value(bumped, RelayMode.INTERFERENCE_FORWARDING)
            res.checks += 1
            if up < base - 1e-9:
                res.fail(f"{name} x1.5 dropped the rate {base!r} -> {up!r}, "
                         f"{_describe(sc)}")
                return res
    return res


def check_bound_monotone(seed: int, n: int) -> InvariantResult:
    """The upper bound is nondecreasing in gains and powers (a12 excluded:
    stronger cross-interference tightens it by construction)."""
    res = InvariantResult("upper bound monotone in links")
    rng = _rng(seed, 11)
    for _ in range(max(3, min(40, n // 25))):
        sc = sample_scenario(rng)
        base = outerbound.sum_rate_upper_bound(sc).rate
        for name in _BOUND_PARAMS:
            holder = sc.gains if name in ("b1", "b2", "c1", "c2") else sc.powers
            bumped = sc.with_param(name, getattr(holder, name) * 1.5)
            if name == "c2" and bumped.gains.c2 > bumped.gains.c1:
                continue
            up = outerbound.sum_rate_upper_bound(bumped).rate
            res.checks += 1
            if up < base - 1e-9:
                res.fail(f"{name} x1.5 dropped the bound {base!r} -> {up!r}, "
                         f"{_describe(sc)}")
                return res
    return res


def check_optimizer_quality(seed: int, n: int) -> InvariantResult:
    """The power-split optimizer is at least as good as a dense grid
    search, to 2e-6 (it may legitimately beat the grid at kinks)."""
    res = InvariantResult("optimizer at least matches dense grid")
    rng = _rng(seed, 12)
    xis = np.linspace(0.0, 1.0, 200_001)
    for _ in range(max(2, min(10, n // 100))):
        sc = sample_scenario(rng)
        opt, _ = achievability.max_sum_rate_value(sc, RelayMode.INTERFERENCE_FORWARDING)
        dense = float(np.max(achievability.sum_rate_curve(
            sc, xis, RelayMode.INTERFERENCE_FORWARDING)))
        res.checks += 1
        if dense - opt > 2e-6:
            res.fail(f"dense grid beats optimizer by {dense - opt!r}, {_describe(sc)}")
            return res
        upper = outerbound.sum_rate_upper_bound(sc)
        t = achievability.rate_terms(sc)
        w = t.ic_direct + t.ic_faded
        t3 = t.ic_direct + t.p2_solo + t.mac1 + t.mac2
        g = t.eta_bc * 0.5 * np.log2(1.0 + t.snr_bc1 * xis)
        h = t.eta_bc * 0.5 * np.log2(1.0 + t.snr_bc2 * (1 - xis) / (1 + t.snr_bc2 * xis))
        dense_ub = float(np.max(np.minimum(w + np.minimum(g, t.mac1) + h, t3)))
        res.checks += 1
        if dense_ub - upper.rate > 2e-6:
            res.fail(f"dense grid beats bound optimizer by {dense_ub - upper.rate!r}, "
                     f"{_describe(sc)}")
            return res
    return res


def check_asymptotic_regime(seed: int, n: int) -> InvariantResult:
    """With b2 = c1 = 1e4 on the benchmark relay side, the interference-
    forwarding optimum sits at a vanishing power split and approaches the
    asymptotic sum capacity.

    Only the IC side is randomized: at any finite b2 the relay MAC rate
    grows like eta_mac*log(b2), so a tiny eta_mac or tiny relay powers
    would push the asymptotic regime beyond any fixed gain value.
    """
    res = InvariantResult("asymptotic regime: xi* -> 0")
    rng = _rng(seed, 13)
    for _ in range(5):
        sc = scenario_from_dict(dict(
            a12=min(float(10.0 ** rng.uniform(-1, 1)), 1.0),
            a21=float(10.0 ** rng.uniform(-1, 1)),
            b1=1.0, b2=1e4, c1=1e4, c2=1.0,
            P1=float(10.0 ** rng.uniform(-1, 2)),
            P2=float(10.0 ** rng.uniform(-1, 2)),
            P1R=10.0, P2R=10.0, PR=10.0,
            eta=2.0, eta_mac=1.0, eta_bc=1.0,
        ))
        rate, xi_star = achievability.max_sum_rate_value(
            sc, RelayMode.INTERFERENCE_FORWARDING)
        target = achievability.asymptotic_sum_capacity(sc)
        res.checks += 1
        if xi_star > 1e-3 or abs(rate - target) > 1e-3:
            res.fail(f"xi*={xi_star!r}, rate {rate!r} vs asymptotic {target!r}, "
                     f"{_describe(sc)}")
            return res
    return res


def check_bandwidth_consistency(seed: int, n: int) -> InvariantResult:
    """Bandwidth optimization reproduces its rate on re-evaluation and
    beats the even split."""
    res = InvariantResult("bandwidth optimum consistent and >= even split")
    rng = _rng(seed, 14)
    for _ in range(2):
        sc = sample_scenario(rng)
        eta = 1.0
        for objective in (bandwidth.BandwidthObjective.ACHIEVABLE_SR,
                          bandwidth.BandwidthObjective.UPPER_BOUND):
            out = bandwidth.optimize_bandwidth(sc, eta, objective)
            even = sc.with_bandwidth(eta / 2, eta / 2)
            if objective is bandwidth.BandwidthObjective.UPPER_BOUND:
                re_rate = outerbound.sum_rate_upper_bound(
                    sc.with_bandwidth(out.eta_mac_star, out.eta_bc_star)).rate
                even_rate = outerbound.sum_rate_upper_bound(even).rate
            else:
                re_rate, _ = achievability.max_sum_rate_value(
                    sc.with_bandwidth(out.eta_mac_star, out.eta_bc_star),
                    RelayMode.SIGNAL_RELAYING)
                even_rate, _ = achievability.max_sum_rate_value(
                    even, RelayMode.SIGNAL_RELAYING)
            res.checks += 2
            if abs(re_rate - out.rate) > 1e-9:
                res.fail(f"{objective.value}: re-evaluation {re_rate!r} vs "
                         f"{out.rate!r}, {_describe(sc)}")
                return res
            if out.rate < even_rate - 1e-9:
                res.fail(f"{objective.value}: optimum {out.rate!r} below even split "
                         f"{even_rate!r}, {_describe(sc)}")
                return res
    return res


ALL_INVARIANTS = (
    check_capacity_shape,
    check_capacity_chain,
    check_threshold_range,
    check_fm_projection_soundness,
    check_fm_order_invariance,
    check_closed_form_projection,
    check_sum_rate_routes,
    check_sr_le_if,
    check_achievable_le_bound,
    check_certificates,
    check_achievable_monotone,
    check_bound_monotone,
    check_optimizer_quality,
    check_asymptotic_regime,
    check_bandwidth_consistency,
)


def run_verification(seed: int = 42, n_scenarios: int = 1000) -> VerificationReport:
    """Run every invariant; n_scenarios scales the sampling effort."""
    if n_scenarios < 1:
        raise ValueError("n_scenarios must be >= 1")
    results = [check(seed, n_scenarios) for check in ALL_INVARIANTS]
    return VerificationReport(seed=seed, n_scenarios=n_scenarios, results=results)
