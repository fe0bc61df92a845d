from icobr.verify import ALL_INVARIANTS, run_verification, sample_scenario

import numpy as np


def test_sampler_respects_regimes():
    rng = np.random.default_rng(1)
    for _ in range(200):
        sc = sample_scenario(rng)
        assert sc.gains.a12 <= 1.0
        assert sc.gains.c1 >= sc.gains.c2
        assert 0.1 <= sc.powers.P1 <= 100.0
        assert abs(sc.bw.eta_mac + sc.bw.eta_bc - 1.0) <= 1e-12


def test_suite_passes_at_modest_budget():
    report = run_verification(seed=42, n_scenarios=150)
    failed = [r for r in report.results if not r.passed]
    assert not failed, "\n".join(f"{r.name}: {r.failures[0]}" for r in failed)
    assert len(report.results) == len(ALL_INVARIANTS)
    assert all(r.checks > 0 for r in report.results)


def test_suite_deterministic():
    a = run_verification(seed=9, n_scenarios=40)
    b = run_verification(seed=9, n_scenarios=40)
    assert [(r.name, r.checks, r.failures) for r in a.results] == \
           [(r.name, r.checks, r.failures) for r in b.results]
