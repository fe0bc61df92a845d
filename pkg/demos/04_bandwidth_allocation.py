# The second benchmark experiment: let the optimizer choose how the relay
# splits its band between listening and transmitting, as the source-1-to-
# relay gain b1 grows.  Beyond b1 of about the relay-to-D1 gain, the
# achievable sum rate meets the upper bound, and the optimal allocation
# balances the two pipes of the source-1 relay path:
#     eta_mac * C(b1^2 P1R)  ==  eta_bc * C(c1^2 xi* PR).

import math
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from icobr import cli

OUT_DIR = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT_DIR, exist_ok=True)

spec = cli.parse_sweep_spec(cli.load_sweep_spec("bandwidth_split"))
rows = cli.run_sweep(spec)
columns = cli.sweep_columns(spec)
csv_path = os.path.join(OUT_DIR, "bandwidth_split.csv")
cli.write_csv(csv_path, columns, rows)
print(f"wrote {csv_path} ({len(rows)} rows)")

b1 = np.array([float(r[0]) for r in rows])
col = lambda name: np.array([float(r[columns.index(name)]) for r in rows])
ach = col("achievable_sr_rate")
ub = col("upper_bound_rate")
eta_mac = col("achievable_sr_eta_mac_star")
xi = col("achievable_sr_xi_star")

base = spec["base"]
mac_pipe = eta_mac * 0.5 * np.log2(1 + b1 ** 2 * base["P1R"])
bc_pipe = (spec["eta"] - eta_mac) * 0.5 * np.log2(
    1 + base["c1"] ** 2 * xi * base["PR"])

fig, (top, bottom) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
top.plot(b1, ach, label="achievable (signal relaying)")
top.plot(b1, ub, ":", label="upper bound")
top.set_ylabel("sum rate (bits/use)")
top.legend()
top.grid(alpha=0.3)

bottom.plot(b1, eta_mac, label="eta_mac*")
bottom.plot(b1, spec["eta"] - eta_mac, "--", label="eta_bc*")
bottom.plot(b1, xi, ":", label="xi*")
bottom.set_xlabel("source-1-to-relay gain b1")
bottom.set_ylabel("optimal parameters")
bottom.legend()
bottom.grid(alpha=0.3)

fig.tight_layout()
path = os.path.join(OUT_DIR, "bandwidth_allocation.png")
fig.savefig(path, dpi=130)
print(f"wrote {path}")

print("\npipe balance along the sweep (source-1 relay path):")
for k in range(0, len(b1), 8):
    print(f"  b1 = {b1[k]:5.2f}: listening pipe {mac_pipe[k]:.4f}, "
          f"transmitting pipe {bc_pipe[k]:.4f}")
