"""Bound-state eigenvalues, their inverse curves, and parameter sweeps.

Both eigenvalue conditions are monotone in kappa = sqrt(|E|), so each branch
has exactly one root. It is bracketed, bisected to a coarse relative width
and then polished with Newton steps using the analytic derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import (
    EXCITED,
    GROUND,
    Energy,
    EnergyBranch,
    ModelParams,
    branch_derivative_kappa,
    branch_function_kappa,
    coalesced_eigenvalue,
    ground_threshold,
)

DEFAULT_TOL = 1e-12
_BISECT_REL_WIDTH = 1e-3
_MAX_DOUBLINGS = 60
_MAX_NEWTON = 60


class SolverError(RuntimeError):
    """Raised when a bracket cannot be established or the tolerance is not met."""


@dataclass(frozen=True)
class SpectralPoint:
    beta: float
    x0: float
    branch: EnergyBranch
    energy: Energy
    residual: float
    kappa: float = field(repr=False, default=math.nan)

    @property
    def shift(self) -> float:
        """Offset ``|beta| kappa / 2 - 1`` from the single-centre threshold."""
        return self.energy.shift

    def as_dict(self) -> dict:
        return {
            "beta": float(self.beta),
            "x0": float(self.x0),
            "branch": self.branch.value,
            "energy": float(self.energy),
            "residual": float(self.residual),
        }


def _params(params_or_beta, x0=None) -> ModelParams:
    if isinstance(params_or_beta, ModelParams):
        return params_or_beta
    return ModelParams(float(params_or_beta), float(x0))


def solve_eigenvalue(branch, params: ModelParams, tol: float = DEFAULT_TOL) -> SpectralPoint:
    """Solve the ground or excited eigenvalue equation for the given parameters.

    Returns a :class:`SpectralPoint` whose ``residual`` is ``|F|`` at the root.
    Raises ``ValueError`` for a non-attractive coupling and :class:`SolverError`
    if ``tol`` cannot be reached.
    """
    branch = EnergyBranch.parse(branch)
    params = _params(params)
    params.require_attractive()
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    beta, x0 = params.beta, params.x0
    b = abs(beta)

    def f(kappa):
        return float(branch_function_kappa(branch, kappa, beta, x0))

    if branch is GROUND:
        lo = 2.0 / b
        offset = 1.0
        hi = lo + offset
        for _ in range(_MAX_DOUBLINGS):
            if f(hi) > 0.0:
                break
            offset *= 2.0
            hi = lo + offset
        else:
            raise SolverError(f"no sign change for the ground branch at beta={beta!r}, x0={x0!r}")
    else:
        lo, hi = 1.0 / b, 2.0 / b

    f_lo, f_hi = f(lo), f(hi)
    # at large x0 the root sits within one ulp of the -4/beta^2 endpoint
    if f_lo == 0.0:
        hi = lo
    elif f_hi == 0.0:
        lo = hi
    elif not (f_lo < 0.0 < f_hi):
        raise SolverError(f"bracket lost for {branch.value} branch at beta={beta!r}, x0={x0!r}")

    while hi - lo > _BISECT_REL_WIDTH * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid

    kappa = 0.5 * (lo + hi)
    value = f(kappa)
    for _ in range(_MAX_NEWTON):
        if value == 0.0:
            break
        if value < 0.0:
            lo = kappa
        else:
            hi = kappa
        step = value / float(branch_derivative_kappa(branch, kappa, beta, x0))
        trial = kappa - step
        if not lo <= trial <= hi:
            trial = 0.5 * (lo + hi)
        if trial == kappa:
            break
        kappa = trial
        value = f(kappa)
        if abs(value) <= tol and abs(step) <= 4.0 * np.finfo(float).eps * kappa:
            break

    residual = abs(value)
    if residual > tol:
        raise SolverError(
            f"residual {residual:.3e} above tol {tol:.1e} for {branch.value} branch "
            f"at beta={beta!r}, x0={x0!r}"
        )
    return SpectralPoint(
        beta=beta,
        x0=x0,
        branch=branch,
        energy=Energy(-kappa * kappa, beta=beta, shift=_threshold_shift(branch, kappa, beta, x0)),
        residual=residual,
        kappa=kappa,
    )


def _threshold_shift(branch: EnergyBranch, kappa: float, beta: float, x0: float) -> float:
    # t(1 -+ e^{-a t}) = 1 with t = |beta| kappa / 2 gives t - 1 = +- t e^{-a t},
    # which carries full relative precision even when t - 1 underflows in t.
    t = 0.5 * abs(beta) * kappa
    decay = math.exp(-2.0 * x0 * kappa)
    return t * decay if branch is GROUND else -t * decay


def _kappa(E) -> float:
    E = float(E)
    if not E < 0.0:
        raise ValueError("energy must be strictly negative")
    return math.sqrt(-E)


def x0_of_ground_energy(E, beta: float) -> float:
    """Half-distance at which ``E`` is the ground-state energy, for E < -4/beta^2."""
    if not beta < 0.0:
        raise ValueError("beta must be negative")
    kappa = _kappa(E)
    shift = E.shift_for(beta) if isinstance(E, Energy) else None
    inside = shift > 0.0 if shift is not None else float(E) < ground_threshold(beta)
    if not inside:
        raise ValueError(f"ground energy must lie below -4/beta^2 = {ground_threshold(beta)!r}")
    if shift is not None:
        log_arg = math.log(shift) - math.log1p(shift)
    else:
        bk = abs(beta) * kappa
        log_arg = math.log((bk - 2.0) / bk)
    return -log_arg / (2.0 * kappa)


def x0_of_excited_energy(E, beta: float) -> float:
    """Half-distance at which ``E`` is the excited-state energy, for -4/beta^2 < E < -1/beta^2."""
    if not beta < 0.0:
        raise ValueError("beta must be negative")
    kappa = _kappa(E)
    shift = E.shift_for(beta) if isinstance(E, Energy) else None
    if shift is not None:
        inside = -0.5 < shift < 0.0 and float(E) < coalesced_eigenvalue(beta)
    else:
        inside = ground_threshold(beta) < float(E) < coalesced_eigenvalue(beta)
    if not inside:
        raise ValueError("excited energy must lie strictly between -4/beta^2 and -1/beta^2")
    if shift is not None and -0.25 < shift < 0.0:
        log_arg = math.log(-shift) - math.log1p(shift)
    else:
        bk = abs(beta) * kappa
        log_arg = math.log1p((2.0 - 2.0 * bk) / bk)
    return -log_arg / (2.0 * kappa)


def beta_of_energy(branch, E, x0: float) -> float:
    """Coupling for which ``E`` is the eigenvalue of ``branch`` at half-distance ``x0``."""
    branch = EnergyBranch.parse(branch)
    if not x0 > 0.0:
        raise ValueError("x0 must be positive")
    kappa = _kappa(E)
    u = 2.0 * x0 * kappa
    factor = -math.expm1(-u) if branch is GROUND else 1.0 + math.exp(-u)
    return -2.0 / (kappa * factor)


def energy_of_beta(branch, beta: float, x0: float, tol: float = DEFAULT_TOL) -> Energy:
    return solve_eigenvalue(branch, ModelParams(beta, x0), tol).energy


# --------------------------------------------------------------------------
# sweeps

SWEEP_COLUMNS = ("axis", "value", "E0", "E1", "gap", "residual0", "residual1")


@dataclass(frozen=True)
class SweepRow:
    value: float
    E0: float
    E1: float
    gap: float
    residual0: float
    residual1: float


@dataclass(frozen=True)
class SweepTable:
    axis: str
    fixed: float
    rows: tuple[SweepRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])

    def records(self) -> list[dict]:
        return [
            {"axis": self.axis, "value": r.value, "E0": r.E0, "E1": r.E1, "gap": r.gap,
             "residual0": r.residual0, "residual1": r.residual1}
            for r in self.rows
        ]

    def to_csv(self) -> str:
        from .formatting import csv_text

        return csv_text(SWEEP_COLUMNS, self.records())

    def to_json(self) -> str:
        from .formatting import json_text

        return json_text(self.records())


def branch_gap(ground: SpectralPoint, excited: SpectralPoint) -> float:
    """E1 - E0 computed from the threshold offsets, accurate even when both are near -4/beta^2."""
    beta = ground.beta
    s0, s1 = ground.shift, excited.shift
    return 4.0 / (beta * beta) * (s0 - s1) * (2.0 + s0 + s1)


def grid(lo: float, hi: float, points: int, spacing: str = "linear") -> np.ndarray:
    if not lo < hi:
        raise ValueError("range must satisfy lo < hi")
    if points < 2:
        raise ValueError("points must be at least 2")
    if spacing == "linear":
        values = np.linspace(lo, hi, points)
    elif spacing == "log":
        if lo > 0.0:
            values = np.geomspace(lo, hi, points)
        elif hi < 0.0:
            # log spacing in |value| for a negative range, kept increasing
            values = -np.geomspace(-lo, -hi, points)
        else:
            raise ValueError("log spacing needs a range that excludes 0")
    else:
        raise ValueError(f"unknown spacing {spacing!r}")
    values[0], values[-1] = lo, hi
    return values


def sweep(axis: str, fixed: float, value_range: tuple[float, float], points: int,
          spacing: str = "linear", tol: float = DEFAULT_TOL) -> SweepTable:
    """Solve both branches along a grid in ``x0`` (fixed beta) or ``beta`` (fixed x0)."""
    axis = axis.lower()
    lo, hi = value_range
    if axis == "x0":
        if not fixed < 0.0:
            raise ValueError("beta must be negative")
        if not lo > 0.0:
            raise ValueError("x0 range must be positive")
    elif axis == "beta":
        if not fixed > 0.0:
            raise ValueError("x0 must be positive")
        if not hi < 0.0:
            raise ValueError("beta range must be negative")
    else:
        raise ValueError(f"unknown axis {axis!r}; expected 'x0' or 'beta'")
    values = grid(lo, hi, points, spacing)

    rows = []
    for value in values:
        params = ModelParams(fixed, value) if axis == "x0" else ModelParams(value, fixed)
        try:
            p0 = solve_eigenvalue(GROUND, params, tol)
            p1 = solve_eigenvalue(EXCITED, params, tol)
        except SolverError as exc:
            raise SolverError(f"sweep failed at {axis}={value!r}: {exc}") from exc
        rows.append(SweepRow(float(value), float(p0.energy), float(p1.energy),
                             branch_gap(p0, p1), p0.residual, p1.residual))
    return SweepTable(axis, float(fixed), tuple(rows))
