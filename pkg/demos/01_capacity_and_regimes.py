# Walk through the basic channel quantities: the Gaussian capacity
# function, the strong-interference threshold, and the gain-regime flags
# that every optimality statement in the library is conditioned on.

import numpy as np

from icobr import (gaussian_capacity, regime_flags, scenario_from_dict,
                   strong_interference_threshold)

# The model: two interfering links (direct gains normalized to 1) plus a
# half-duplex relay on an orthogonal band.  The relay band splits into a
# listening phase (eta_mac) and a transmitting phase (eta_bc).
scenario = scenario_from_dict({
    "a12": 0.5, "a21": 1.8,          # cross gains on the interference channel
    "b1": 1.0, "b2": 10.0,           # source -> relay gains
    "c1": 2.0, "c2": 1.0,            # relay -> destination gains
    "P1": 10.0, "P2": 10.0,          # source powers on the IC
    "P1R": 10.0, "P2R": 10.0,        # source powers toward the relay
    "PR": 10.0,                      # relay transmit power
    "eta": 2.0, "eta_mac": 1.0, "eta_bc": 1.0,
})

print("capacity C(x) = 0.5*log2(1+x), bits per IC channel use")
for snr in (0.0, 1.0, 3.0, 10.0, 100.0):
    print(f"  C({snr:5.1f}) = {gaussian_capacity(snr):.6f}")

# Source 2 can restrict itself to common (decodable-by-both) signalling
# exactly when its cross gain a21 clears this threshold.
thr = strong_interference_threshold(scenario.powers.P1, scenario.gains.a12)
print(f"\nstrong-interference threshold on a21: {thr:.6f}")
print(f"a21 = {scenario.gains.a21} -> above threshold: {scenario.gains.a21 >= thr}")

flags = regime_flags(scenario)
print(f"\nregime flags: weak_a12={flags.weak_a12}, "
      f"bc_ordered={flags.bc_ordered}, strong_a21={flags.strong_a21}")

# The threshold falls as the own-cell interference a12 grows: interference
# at destination 2 already forces source 2 to slow down, so less cross
# gain is needed before common-only signalling is optimal.
print("\nthreshold as a function of a12 at P1 = 10:")
for a12 in np.linspace(0.0, 1.0, 6):
    print(f"  a12 = {a12:.1f}: threshold {strong_interference_threshold(10.0, a12):.4f}")
