import numpy as np
import pytest

from icobr.achievability import (RelayMode, max_sum_rate_value, rate_terms,
                                 separable_sum_capacity)
from icobr.channel import PowerSplit, scenario_from_dict
from icobr.outerbound import (RegimeError, bound_terms, gap_report,
                              sum_rate_upper_bound)
from icobr.verify import sample_scenario

W = 2.703482099371581        # C(10) + C(10/3.5)
T1_XI1 = 5.382258101680623   # W + C(40)
C10 = 1.7297158093186487


def test_bound_terms_at_full_split(fig_scenario):
    bd = bound_terms(fig_scenario(a21=1.8, c1=2.0), PowerSplit(1.0))
    assert bd.t1 == pytest.approx(T1_XI1, abs=1e-9)   # xi_bar term vanishes
    assert bd.t2 == pytest.approx(W + C10, abs=1e-9)
    assert bd.active == 1
    assert bd.value == bd.t2


def test_bound_terms_zero_relay(fig_scenario):
    sc = fig_scenario(P1R=0.0, P2R=0.0, PR=0.0)
    bd = bound_terms(sc, PowerSplit(0.3))
    assert bd.t1 == pytest.approx(W, abs=1e-12)
    assert bd.t2 == pytest.approx(W, abs=1e-12)
    assert sum_rate_upper_bound(sc).rate == pytest.approx(W, abs=1e-12)


def test_regime_gate(fig_scenario):
    with pytest.raises(RegimeError, match="a12"):
        bound_terms(fig_scenario(a12=1.5), PowerSplit(0.5))
    with pytest.raises(RegimeError, match="c1"):
        sum_rate_upper_bound(fig_scenario(c1=0.5))  # c2 = 1


def test_bound_matches_capacity_certificates(fig_scenario):
    for kwargs in (dict(a21=1.8, c1=2.0),            # MAC-limited case
                   dict(a21=1.8, c1=2.0, b1=6.0)):   # BC-limited case
        sc = fig_scenario(**kwargs)
        cap = separable_sum_capacity(sc)
        ub = sum_rate_upper_bound(sc)
        assert abs(ub.rate - cap.rate) <= 1e-6


def test_bound_dominates_achievable_random():
    rng = np.random.default_rng(29)
    for _ in range(200):
        sc = sample_scenario(rng)
        upper = sum_rate_upper_bound(sc).rate
        for mode in RelayMode:
            ach, _ = max_sum_rate_value(sc, mode)
            assert ach <= upper + 1e-9


def test_bound_monotone_in_relay_power(fig_scenario):
    rates = [sum_rate_upper_bound(fig_scenario(PR=pr)).rate
             for pr in (0.0, 1.0, 10.0, 100.0)]
    assert all(b >= a - 1e-12 for a, b in zip(rates, rates[1:]))


def test_gap_report_certified(fig_scenario):
    rep = gap_report(fig_scenario(a21=1.8, c1=2.0))
    assert rep.capacity_established
    assert rep.gap_sr == pytest.approx(0.0, abs=1e-9)
    assert rep.regime_error is None
    assert rep.upper.breakdown.active in (0, 1)


def test_gap_report_interference_forwarding_advantage(fig_scenario):
    rep = gap_report(fig_scenario(a21=0.9, c1=5.0))
    assert rep.gap_if < rep.gap_sr  # forwarding strictly closes the gap
    assert rep.gap_if >= -1e-9


def test_gap_report_regime_error_keeps_achievables(fig_scenario):
    rep = gap_report(fig_scenario(a12=1.5))
    assert rep.upper is None and rep.gap_sr is None
    assert "a12" in rep.regime_error
    assert rep.achievable_sr.sum_rate > 0
    assert not rep.capacity_established


def test_gap_report_ic_only_degenerate():
    # no relay power at all, strong interference: the min structure
    # collapses to the plain interference-channel sum capacity
    sc = scenario_from_dict(dict(a12=0.5, a21=1.8, b1=1, b2=10, c1=2, c2=1,
                                 P1=10, P2=10, P1R=0, P2R=0, PR=0,
                                 eta=2.0, eta_mac=1.0, eta_bc=1.0))
    rep = gap_report(sc)
    t = rate_terms(sc)
    assert rep.upper.rate == pytest.approx(t.ic_direct + t.ic_faded, abs=1e-12)
    assert rep.gap_sr == pytest.approx(0.0, abs=1e-9)
    assert rep.gap_if == pytest.approx(0.0, abs=1e-9)
    assert rep.capacity_established


def test_bound_ignores_explicit_xi_bar(fig_scenario):
    # the converse is only valid with xi_bar = 1 - xi; a smaller xi_bar
    # must not tighten the reported terms
    sc = fig_scenario()
    full = bound_terms(sc, PowerSplit(0.3))
    skewed = bound_terms(sc, PowerSplit(0.3, 0.1))
    assert skewed.t1 == full.t1 and skewed.t2 == full.t2
