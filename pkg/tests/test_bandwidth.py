import math

import pytest

from icobr.achievability import RelayMode, max_sum_rate_value, rate_terms
from icobr.bandwidth import BandwidthObjective, optimize_bandwidth
from icobr.channel import scenario_from_dict
from icobr.outerbound import RegimeError, sum_rate_upper_bound


def balanced_base(**overrides):
    doc = dict(a12=0.5, a21=1.8, b1=4.0, b2=2.0, c1=2.0, c2=0.3,
               P1=10.0, P2=10.0, P1R=10.0, P2R=10.0, PR=10.0)
    doc.update(overrides)
    return scenario_from_dict(doc, require_bw=False)


def cap(x):
    return 0.5 * math.log2(1.0 + x)


def test_zero_relay_power_flat_objective():
    sc = balanced_base(PR=0.0, P1R=0.0, P2R=0.0)
    out = optimize_bandwidth(sc, 1.0, BandwidthObjective.ACHIEVABLE_IF)
    t = rate_terms(sc.with_bandwidth(0.5, 0.5))
    assert out.rate == pytest.approx(
        min(t.ic_direct + t.ic_faded, t.ic_joint), abs=1e-12)


def test_reevaluation_consistency_and_even_split_dominance():
    sc = balanced_base()
    for objective in BandwidthObjective:
        out = optimize_bandwidth(sc, 1.0, objective)
        assert 0.0 <= out.eta_mac_star <= 1.0
        assert out.eta_bc_star == pytest.approx(1.0 - out.eta_mac_star, abs=1e-12)
        best = sc.with_bandwidth(out.eta_mac_star, out.eta_bc_star)
        even = sc.with_bandwidth(0.5, 0.5)
        if objective is BandwidthObjective.UPPER_BOUND:
            re_rate = sum_rate_upper_bound(best).rate
            even_rate = sum_rate_upper_bound(even).rate
        else:
            mode = (RelayMode.SIGNAL_RELAYING
                    if objective is BandwidthObjective.ACHIEVABLE_SR
                    else RelayMode.INTERFERENCE_FORWARDING)
            re_rate, _ = max_sum_rate_value(best, mode)
            even_rate, _ = max_sum_rate_value(even, mode)
        assert re_rate == pytest.approx(out.rate, abs=1e-9)
        assert out.rate >= even_rate - 1e-9


def test_achievable_and_bound_coincide_with_balanced_links():
    sc = balanced_base(b1=4.0)
    ach = optimize_bandwidth(sc, 1.0, BandwidthObjective.ACHIEVABLE_SR)
    ub = optimize_bandwidth(sc, 1.0, BandwidthObjective.UPPER_BOUND)
    assert abs(ach.rate - ub.rate) <= 1e-3
    # the optimum balances the source-to-relay and relay-to-destination pipes
    xi = ach.inner.xi_star.xi
    lhs = ach.eta_mac_star * cap(16.0 * 10.0)
    rhs = ach.eta_bc_star * cap(4.0 * xi * 10.0)
    assert abs(lhs - rhs) <= 1e-3


def test_mac_bandwidth_shrinks_with_stronger_source_link():
    stars = []
    for b1 in (2.0, 4.0, 8.0, 16.0):
        out = optimize_bandwidth(balanced_base(b1=b1), 1.0,
                                 BandwidthObjective.ACHIEVABLE_SR)
        stars.append(out.eta_mac_star)
    assert all(b <= a + 1e-6 for a, b in zip(stars, stars[1:]))
    assert stars[-1] < stars[0]


def test_optimized_achievable_below_optimized_bound():
    sc = balanced_base(b1=1.0)
    ach = optimize_bandwidth(sc, 1.0, BandwidthObjective.ACHIEVABLE_IF)
    ub = optimize_bandwidth(sc, 1.0, BandwidthObjective.UPPER_BOUND)
    assert ach.rate <= ub.rate + 1e-9


def test_upper_bound_objective_checks_regime():
    with pytest.raises(RegimeError):
        optimize_bandwidth(balanced_base(a12=1.4), 1.0,
                           BandwidthObjective.UPPER_BOUND)
    # achievable objectives have no regime restriction
    out = optimize_bandwidth(balanced_base(a12=1.4), 1.0,
                             BandwidthObjective.ACHIEVABLE_IF)
    assert out.rate > 0


def test_eta_validation():
    with pytest.raises(ValueError):
        optimize_bandwidth(balanced_base(), 0.0, BandwidthObjective.ACHIEVABLE_SR)


def test_total_bandwidth_scales_result():
    small = optimize_bandwidth(balanced_base(), 0.5, BandwidthObjective.ACHIEVABLE_SR)
    large = optimize_bandwidth(balanced_base(), 2.0, BandwidthObjective.ACHIEVABLE_SR)
    assert small.rate <= large.rate + 1e-9
    assert small.eta_mac_star <= 0.5
