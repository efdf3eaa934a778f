"""
Bound states of a pair of delta-prime wells
===========================================

Two attractive nonlocal delta-prime interactions of strength beta sit at
+-x0. There are exactly two bound states, one even and one odd, and both
live between -4/beta^2 and -1/beta^2.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dprime_pair import sweep

beta = -1.0
table = sweep("x0", beta, (0.01, 6.0), 200, spacing="log")
x0 = table.column("value")

# The even level sits below -4/beta^2, the odd one above it.
# Both approach the single-well value as the wells drift apart.
fig, ax = plt.subplots()
ax.plot(x0, table.column("E0"), label="ground")
ax.plot(x0, table.column("E1"), label="excited")
ax.axhline(-4 / beta**2, color="k", lw=0.5, ls="--")
ax.axhline(-1 / beta**2, color="k", lw=0.5, ls=":")
ax.set_xscale("log")
ax.set_xlabel("x0")
ax.set_ylabel("E")
ax.set_ylim(-8, 0)
ax.legend()
fig.savefig("bound_states.png", dpi=120)

# The splitting closes exponentially. Fitting log(gap) on [2, 6] recovers the rate.
far = x0 >= 2.0
rate = np.polyfit(x0[far], np.log(table.column("gap")[far]), 1)[0]
print(f"log-gap slope on [2, 6]: {rate:.4f}  (expected -4/|beta| = {-4 / abs(beta):.1f})")
