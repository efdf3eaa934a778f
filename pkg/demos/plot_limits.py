"""
Merging and separating the wells
================================

As x0 -> 0 the odd rank-one term loses its norm and the pair behaves like
a single well of strength 2 beta. As x0 grows, both levels collapse onto
the single-well value -4/beta^2.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dprime_pair import coalescence_report, degeneracy_report
from dprime_pair.limits import deviation_constant

beta = -2.0
merge = coalescence_report(beta, np.geomspace(1e-1, 1e-8, 15), absE=1.0)
x0 = merge.column("x0")

# the sin norm tracks pi x0 while the two norms always add to pi/(2 sqrt|E|)
fig, ax = plt.subplots()
ax.loglog(x0, merge.column("sin_norm"), label="sin norm")
ax.loglog(x0, np.pi * x0, "k:", label="pi x0")
ax.loglog(x0, merge.column("sin_limit_distance"), label="|c_sin - beta/pi|")
ax.loglog(x0, merge.column("cos_limit_distance"), label="|c_cos - limit|")
ax.set_xlabel("x0")
ax.legend()
fig.savefig("coalescence.png", dpi=120)

apart = degeneracy_report(beta, np.linspace(2.0, 12.0, 21))
print("C with |E - E_single| <= C exp(-4 x0/|beta|):", deviation_constant(apart, beta))
