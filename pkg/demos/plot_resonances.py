"""
Resonances in the lower half plane
==================================

In the scaled momentum q = 2 x0 k, every pole is a crossing of two curves.
One is the zero set of the real part of the continued condition, the other
of its imaginary part. We draw both and mark the poles Newton finds.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dprime_pair import axis_roots, curve_points, find_poles

alpha = -1.0
q1 = np.linspace(0.05, 4 * np.pi, 400)

fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
for ax, family in zip(axes, ("ground", "excited")):
    for equation, style in (("real", "C0."), ("imag", "C1.")):
        pts = np.array(curve_points(family, equation, alpha, q1))
        ax.plot(pts[:, 0], pts[:, 1], style, ms=1, label=equation)
    poles = find_poles(family, alpha)
    ax.plot([p.q1 for p in poles], [p.q2 for p in poles], "kx")
    ax.set_title(f"{family}, alpha = {alpha}")
    ax.set_xlabel("q1")
    for p in poles:
        print(family, p.index, p.q1, p.q2, p.residual)
    print(family, "axis roots:", axis_roots(family, alpha))
axes[0].set_ylabel("q2")
axes[0].legend()
fig.savefig("resonances.png", dpi=120)
