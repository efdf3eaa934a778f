"""Two symmetric attractive nonlocal delta-prime interactions on the line.

Bound states, their inverse curves, resonance poles, the cutoff
renormalisation of the coupling, and the merging/separation limits.
"""

__version__ = "0.1.0"

from .cutoff import (
    ConvergenceRun,
    CutoffSample,
    convergence_run,
    cutoff_integral_cos,
    cutoff_integral_sin,
    denominator_limits,
    denominators,
    limit_zero,
    trace_identities,
)
from .eigenfunctions import BoundStateFunction, evaluate, matching_residual, one_sided_values
from .limits import (
    RankOneNorm,
    coalescence_report,
    cos_coefficient,
    cos_coefficient_limit,
    degeneracy_report,
    limit_operator_eigenvalue,
    rank_one_norm,
    sin_coefficient,
    sin_coefficient_limit,
    single_centre_eigenvalue,
)
from .model import (
    EXCITED,
    GROUND,
    DegenerateCutoffError,
    Energy,
    EnergyBranch,
    ModelParams,
    alpha_of,
    branch_function,
    lambda_of_cutoff,
)
from .quadrature import QuadratureError, QuadratureSpec, integrate
from .resonances import ResonancePole, SearchBox, axis_roots, curve_points, find_poles
from .spectrum import (
    SolverError,
    SpectralPoint,
    SweepTable,
    beta_of_energy,
    solve_eigenvalue,
    sweep,
    x0_of_excited_energy,
    x0_of_ground_energy,
)
