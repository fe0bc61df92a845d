# When does the library *prove* a sum capacity?  Two certificate routes:
#
# 1. Condition route: under weak interference toward D2, an ordered
#    broadcast phase and strong interference toward D1, a closed-form
#    expression is optimal whenever one of two relay-side conditions
#    holds (broadcast-limited or listening-limited relay path).
# 2. Numerical route: the optimized achievable rate meets the optimized
#    upper bound to within tolerance.
#
# A third, asymptotic route covers enormous forwarding links.

from icobr import (BottleneckCase, ConditionsNotMetError, RelayMode,
                   asymptotic_sum_capacity, gap_report, max_sum_rate,
                   scenario_from_dict, separable_conditions,
                   separable_sum_capacity)


def make(a21, c1, **overrides):
    doc = dict(a12=0.5, a21=a21, b1=1.0, b2=10.0, c1=c1, c2=1.0,
               P1=10.0, P2=10.0, P1R=10.0, P2R=10.0, PR=10.0,
               eta=2.0, eta_mac=1.0, eta_bc=1.0)
    doc.update(overrides)
    return scenario_from_dict(doc)


print("=== condition route (strong interference, a21 = 1.8) ===")
sc = make(1.8, 2.0)
conds = separable_conditions(sc)
print(f"case: {conds.case.value}  (applicable: {conds.applicable})")
print(f"  listening pipe for source 1: {conds.mac1_rate:.6f}")
print(f"  full broadcast pipe to D1:   {conds.bc1_full_rate:.6f}")
print(f"  -> the relay path is {'broadcast' if conds.case is BottleneckCase.BC else 'listening'}-limited")
cap = separable_sum_capacity(sc)
print(f"sum capacity: {cap.rate:.9f} at xi* = {cap.xi_star:.4f}")

ach = max_sum_rate(sc, RelayMode.SIGNAL_RELAYING)
print(f"achieved by signal relaying: {ach.sum_rate:.9f}")
print(f"optimal stream split: r1p={ach.split.r1p:.4f} r1r={ach.split.r1r:.4f} "
      f"r2cp={ach.split.r2cp:.4f} r2cpp={ach.split.r2cpp:.4f} r2r={ach.split.r2r:.4f}")

print("\n=== no certificate under moderate interference (a21 = 0.9) ===")
try:
    separable_sum_capacity(make(0.9, 2.0))
except ConditionsNotMetError as err:
    print(f"as expected: {err}")

report = gap_report(make(0.9, 2.0))
print(f"numerical gaps: signal relaying {report.gap_sr:.6f}, "
      f"interference forwarding {report.gap_if:.6f}")
print(f"capacity established numerically: {report.capacity_established}")

print("\n=== asymptotic route (b2 = c1 = 10^4) ===")
sc = make(0.9, 1e4, b2=1e4)
ach = max_sum_rate(sc, RelayMode.INTERFERENCE_FORWARDING)
print(f"optimized rate:          {ach.sum_rate:.9f} (xi* = {ach.xi_star.xi:.2e})")
print(f"asymptotic sum capacity: {asymptotic_sum_capacity(sc):.9f}")
print("the relay forwards source 2's common stream almost for free, so the")
print("optimum pushes the power split toward the destination-2 stream")
