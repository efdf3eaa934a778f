"""
Removing the momentum cutoff
============================

With a sharp cutoff k the bare coupling must be tuned, lambda(k), for the
spectrum to stay put. The denominators of the regularised resolvent then
converge like 1/k. Sampling on k_n = n pi/x0 keeps the oscillating part
out of the way.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from dprime_pair import EXCITED, GROUND, ModelParams, convergence_run, limit_zero, solve_eigenvalue

params = ModelParams(beta=-1.0, x0=1.0)
run = convergence_run(params, absE=1.0, n_max=2000)

print("skipped cutoffs (pole of lambda):", run.skipped)
print("log-log slopes:", run.loglog_slope("sin"), run.loglog_slope("cos"))
print("Richardson limits:", run.richardson(), "closed form:", (run.limit_sin, run.limit_cos))

# Where the limiting denominators vanish, the bound states appear.
for branch in (GROUND, EXCITED):
    print(branch.value, -limit_zero(branch, params), float(solve_eigenvalue(branch, params).energy))

fig, ax = plt.subplots()
ax.loglog(run.k, run.delta_sin, label="sin channel")
ax.loglog(run.k, run.delta_cos, label="cos channel")
ax.loglog(run.k, 1.0 / run.k, "k:", label="1/k")
ax.set_xlabel("cutoff k")
ax.set_ylabel("distance from limit")
ax.legend()
fig.savefig("cutoff.png", dpi=120)
