"""Merging (x0 -> 0+) and separation (x0 -> inf) limits of the two-centre model.

As the centres merge, the sin-channel rank-one term of the resolvent loses
its trace norm and the cos-channel term tends to the resolvent correction of
a single nonlocal delta-prime of coupling 2 beta at the origin, whose only
eigenvalue is -1/beta^2. For rank-one terms the trace norm is the squared
L2 norm of the defining vector, so both statements are checked on scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .model import EXCITED, GROUND, EnergyBranch, ModelParams
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate, integrate_semi_infinite
from .spectrum import DEFAULT_TOL, branch_gap, solve_eigenvalue

COALESCENCE_COLUMNS = ("x0", "sin_norm", "cos_norm", "sin_coefficient", "sin_limit_distance",
                       "cos_coefficient", "cos_limit_distance")
DEGENERACY_COLUMNS = ("x0", "E0", "E1", "gap", "dev0", "dev1")


@dataclass(frozen=True)
class RankOneNorm:
    branch: EnergyBranch
    x0: float
    absE: float
    value: float

    @property
    def bound(self) -> float:
        return 0.5 * math.pi / math.sqrt(self.absE)


_MERGED = 1e-150


def _full_weight(absE: float, spec: QuadratureSpec) -> float:
    """int_R p^2/(p^2+|E|)^2 dp, the value both norms share at x0 = 0."""
    root = math.sqrt(absE)
    return 2.0 * integrate_semi_infinite(
        lambda u: root * (root * u) ** 2 / ((root * root * u * u + absE) ** 2), 0.0, spec).value


def _half_line(branch: EnergyBranch, x0: float, absE: float, spec: QuadratureSpec) -> float:
    """int_0^inf p^2 trig^2(x0 p)/(p^2+|E|)^2 dp.

    With t = 2 x0 p this is 2 x0 int_0^inf t^2 trig^2(t/2)/(t^2+c)^2 dt,
    c = 4 x0^2 |E|, whose pieces are all of order one. The head up to the
    first zero of cos t is integrated directly on geometric cells (for small
    c it spans many decades); on the tail trig^2 = (1 -+ cos t)/2 and the
    cosine part goes to QUADPACK's Fourier-integral routine.
    """
    omega = 2.0 * x0
    c = omega * omega * absE
    head_end = 0.5 * math.pi
    if 8.0 * math.sqrt(c) < head_end and c > _MERGED ** 2:
        edges = np.concatenate([[0.0], np.geomspace(math.sqrt(c) / 8.0, head_end, 48)])
    else:
        edges = np.linspace(0.0, head_end, 9)
    trig = np.sin if branch is GROUND else np.cos
    head = integrate(lambda t: (t * trig(0.5 * t) / (t * t + c)) ** 2, edges, spec).value
    flat = integrate_semi_infinite(lambda t: t * t / (t * t + c) ** 2, head_end, spec).value
    wave, _ = quad(lambda t: t * t / (t * t + c) ** 2, head_end, math.inf,
                   weight="cos", wvar=1.0, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                   limlst=200, limit=200)
    return omega * (head + 0.5 * (flat + branch.sign * wave))


def rank_one_norm(branch, x0: float, absE: float, spec: QuadratureSpec = DEFAULT_SPEC) -> RankOneNorm:
    """Squared L2 norm over the line of p sin(x0 p)/(p^2+|E|) (ground) or p cos(x0 p)/(p^2+|E|) (excited)."""
    branch = EnergyBranch.parse(branch)
    if x0 < 0.0 or not absE > 0.0:
        raise ValueError("need x0 >= 0 and |E| > 0")
    if x0 == 0.0:
        value = 0.0 if branch is GROUND else _full_weight(absE, spec)
    elif 2.0 * x0 * math.sqrt(absE) < _MERGED:
        # the cos-branch peak of width ~x0 can no longer be resolved; use the complement
        sin_value = 2.0 * _half_line(GROUND, x0, absE, spec)
        value = sin_value if branch is GROUND else _full_weight(absE, spec) - sin_value
    else:
        value = 2.0 * _half_line(branch, x0, absE, spec)
    return RankOneNorm(branch, float(x0), float(absE), value)


def sin_coefficient(beta: float, x0: float, absE: float) -> float:
    root = math.sqrt(absE)
    return 1.0 / (math.pi * (1.0 / beta - 0.5 * root * math.expm1(-2.0 * x0 * root)))


def cos_coefficient(beta: float, x0: float, absE: float) -> float:
    root = math.sqrt(absE)
    return 1.0 / (math.pi * (1.0 / beta + 0.5 * root * (1.0 + math.exp(-2.0 * x0 * root))))


def sin_coefficient_limit(beta: float) -> float:
    return beta / math.pi


def cos_coefficient_limit(beta: float, absE: float) -> float:
    """1/(pi (1/beta + sqrt|E|)); infinite at the limit operator's eigenvalue |E| = 1/beta^2."""
    denom = math.pi * (1.0 / beta + math.sqrt(absE))
    if denom == 0.0:
        return math.inf
    return 1.0 / denom


def limit_operator_eigenvalue(beta: float) -> float:
    """Eigenvalue -1/beta^2 of the merged single delta-prime of coupling 2 beta."""
    if not beta < 0.0:
        raise ValueError("beta must be negative")
    return -1.0 / (beta * beta)


def single_centre_eigenvalue(coupling: float) -> float:
    """Eigenvalue -4/b^2 of one attractive nonlocal delta-prime of coupling b."""
    if not coupling < 0.0:
        raise ValueError("coupling must be negative")
    return -4.0 / (coupling * coupling)


@dataclass(frozen=True)
class LimitTable:
    columns: tuple[str, ...]
    rows: tuple[dict, ...]

    def column(self, name: str) -> np.ndarray:
        return np.array([r[name] for r in self.rows], dtype=float)

    def records(self) -> list[dict]:
        return [dict(r) for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)


def coalescence_report(beta: float, x0_sequence, absE: float = 1.0,
                       spec: QuadratureSpec = DEFAULT_SPEC) -> LimitTable:
    """Rank-one norms and resolvent coefficients along a decreasing x0 sequence."""
    if not beta < 0.0:
        raise ValueError("beta must be negative")
    xs = [float(x) for x in x0_sequence]
    if any(x <= 0.0 for x in xs) or any(b >= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x0_sequence must be positive and strictly decreasing")
    sin_lim = sin_coefficient_limit(beta)
    cos_lim = cos_coefficient_limit(beta, absE)
    rows = []
    for x0 in xs:
        cs, cc = sin_coefficient(beta, x0, absE), cos_coefficient(beta, x0, absE)
        rows.append({
            "x0": x0,
            "sin_norm": rank_one_norm(GROUND, x0, absE, spec).value,
            "cos_norm": rank_one_norm(EXCITED, x0, absE, spec).value,
            "sin_coefficient": cs,
            "sin_limit_distance": abs(cs - sin_lim),
            "cos_coefficient": cc,
            "cos_limit_distance": abs(cc - cos_lim),
        })
    return LimitTable(COALESCENCE_COLUMNS, tuple(rows))


def degeneracy_report(beta: float, x0_sequence, tol: float = DEFAULT_TOL) -> LimitTable:
    """Both eigenvalues and their distance from -4/beta^2 along an increasing x0 sequence."""
    if not beta < 0.0:
        raise ValueError("beta must be negative")
    xs = [float(x) for x in x0_sequence]
    if any(x <= 0.0 for x in xs) or any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x0_sequence must be positive and strictly increasing")
    scale = 4.0 / (beta * beta)
    rows = []
    for x0 in xs:
        p0 = solve_eigenvalue(GROUND, ModelParams(beta, x0), tol)
        p1 = solve_eigenvalue(EXCITED, ModelParams(beta, x0), tol)
        s0, s1 = p0.shift, p1.shift
        rows.append({
            "x0": x0,
            "E0": float(p0.energy),
            "E1": float(p1.energy),
            "gap": branch_gap(p0, p1),
            # |E + 4/beta^2| = (4/beta^2) |s (2 + s)|
            "dev0": scale * abs(s0 * (2.0 + s0)),
            "dev1": scale * abs(s1 * (2.0 + s1)),
        })
    return LimitTable(DEGENERACY_COLUMNS, tuple(rows))


def gap_decay_rate(table: LimitTable) -> float:
    """Least-squares slope of log(gap) against x0."""
    return float(np.polyfit(table.column("x0"), np.log(table.column("gap")), 1)[0])


def deviation_constant(table: LimitTable, beta: float) -> float:
    """Smallest C with dev0, dev1 <= C exp(-4 x0/|beta|) over the table."""
    x = table.column("x0")
    dev = np.maximum(table.column("dev0"), table.column("dev1"))
    return float(np.max(dev * np.exp(4.0 * x / abs(beta))))
