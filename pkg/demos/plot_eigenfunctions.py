"""
Shapes of the two bound states
==============================

Each state is a sum of two exponentials centred on the wells. The even
one has a smooth bump in the middle. The odd one changes sign at the origin.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from dprime_pair import EXCITED, GROUND, BoundStateFunction, ModelParams, matching_residual, solve_eigenvalue
from dprime_pair.eigenfunctions import sample

params = ModelParams(beta=-1.0, x0=1.0)

fig, ax = plt.subplots()
for branch in (GROUND, EXCITED):
    point = solve_eigenvalue(branch, params)
    f = BoundStateFunction.from_point(point, normalize=True)
    x, y = sample(f, -5.0, 5.0, 1001)
    ax.plot(x, y, label=f"{branch.value}, E = {float(point.energy):.6f}")
    # the derivative jump at each well is fixed by the coupling
    print(branch.value, "jump residuals:",
          matching_residual(f, params.beta, 1), matching_residual(f, params.beta, -1))

for c in (-params.x0, params.x0):
    ax.axvline(c, color="k", lw=0.5)
ax.set_xlabel("x")
ax.legend()
fig.savefig("eigenfunctions.png", dpi=120)
