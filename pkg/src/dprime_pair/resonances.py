"""Resonance poles of the continued eigenvalue conditions in the momentum plane.

Writing sqrt(-E) = -i(k1 + i k2), q = 2 x0 (k1 + i k2) and alpha = 4 x0/beta,
the ground and excited conditions become

    G(q) = i q (1 -+ exp(i q)) - alpha = 0,

holomorphic in q = q1 + i q2. Bound states sit on the positive imaginary
axis; resonances are off-axis zeros with q2 < 0, and they come in mirror
pairs (q1, q2), (-q1, q2) because G(-conj q) = conj G(q) for real alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .model import GROUND, EnergyBranch

Q1_MIN_THRESHOLD = 1e-6
DEDUP_DISTANCE = 1e-8
RESIDUAL_TOL = 1e-10
_NEWTON_ITERS = 50
_HALVINGS = 30

POLE_COLUMNS = ("family", "index", "alpha", "q1", "q2", "residual")
CURVE_COLUMNS = ("family", "equation", "alpha", "q1", "q2")


@dataclass(frozen=True)
class ResonancePole:
    family: EnergyBranch
    index: int
    q1: float
    q2: float
    residual: float
    alpha: float = math.nan

    @property
    def q(self) -> complex:
        return complex(self.q1, self.q2)

    def as_dict(self) -> dict:
        return {"family": self.family.value, "index": self.index, "alpha": self.alpha,
                "q1": self.q1, "q2": self.q2, "residual": self.residual}


@dataclass(frozen=True)
class SearchBox:
    q1_max: float = 4.0 * math.pi
    q2_min: float = -6.0
    grid: tuple[int, int] = (48, 12)

    def __post_init__(self):
        if not self.q1_max > 0.0:
            raise ValueError("q1_max must be positive")
        if not self.q2_min < 0.0:
            raise ValueError("q2_min must be negative")
        if min(self.grid) < 1:
            raise ValueError("grid counts must be positive")

    def contains(self, q: complex) -> bool:
        return 0.0 < q.real <= self.q1_max and self.q2_min <= q.imag < 0.0


def _check_alpha(alpha: float) -> None:
    if not alpha < 0.0:
        raise ValueError("alpha must be negative")


def _sign(family: EnergyBranch) -> float:
    return EnergyBranch.parse(family).sign


def continuation(family, q, alpha: float):
    """G(q) = i q (1 -+ e^{iq}) - alpha on complex ``q`` (scalar or array)."""
    s = _sign(family)
    q = np.asarray(q, dtype=complex)
    value = 1j * q * (1.0 + s * np.exp(1j * q)) - alpha
    return complex(value) if value.ndim == 0 else value


def continuation_derivative(family, q):
    """dG/dq = i (1 -+ e^{iq}) +- q e^{iq}."""
    s = _sign(family)
    q = np.asarray(q, dtype=complex)
    e = np.exp(1j * q)
    value = 1j * (1.0 + s * e) - s * q * e
    return complex(value) if value.ndim == 0 else value


def complex_residual(family, q1: float, q2: float, alpha: float) -> complex:
    """Value of the continued condition at q = q1 + i q2."""
    _check_alpha(alpha)
    return continuation(family, complex(q1, q2), alpha)


def real_equation(family, q1, q2, alpha: float):
    """(q2 + alpha) e^{q2} -+ ... written as LHS - RHS; zero on the 'real part' curve."""
    s = _sign(family)
    return (q2 + alpha) * np.exp(q2) + s * (q2 * np.cos(q1) + q1 * np.sin(q1))


def imag_equation(family, q1, q2):
    """e^{q2} -+ (cos q1 - q2 sin(q1)/q1) as LHS - RHS; zero on the 'imaginary part' curve."""
    s = _sign(family)
    q1 = np.asarray(q1, dtype=float)
    # np.sinc(x) = sin(pi x)/(pi x) fills the removable point q1 = 0 with 1
    sinc = np.sinc(q1 / np.pi)
    return np.exp(q2) + s * (np.cos(q1) - q2 * sinc)


def _newton(family, q: complex, alpha: float) -> complex | None:
    value = continuation(family, q, alpha)
    size = abs(value)
    for _ in range(_NEWTON_ITERS):
        deriv = continuation_derivative(family, q)
        if deriv == 0 or not np.isfinite(deriv):
            return None
        step = value / deriv
        lam = 1.0
        for _ in range(_HALVINGS):
            trial = q - lam * step
            trial_value = continuation(family, trial, alpha)
            if np.isfinite(trial_value) and abs(trial_value) < size:
                break
            lam *= 0.5
        else:
            # no decrease possible: converged to rounding level or stuck
            return q if size < RESIDUAL_TOL else None
        q, value, size = trial, trial_value, abs(trial_value)
        if abs(lam * step) <= 1e-15 * max(1.0, abs(q)):
            break
    return q


def _seeds(family: EnergyBranch, box: SearchBox) -> list[complex]:
    seeds = []
    start = 2.0 * math.pi if family is GROUND else math.pi
    centre = start
    while centre <= box.q1_max + math.pi:
        for q2 in (-0.5, -1.5, -3.0):
            if q2 >= box.q2_min:
                seeds.append(complex(centre, q2))
        centre += 2.0 * math.pi
    n1, n2 = box.grid
    q1s = np.linspace(box.q1_max / n1, box.q1_max, n1)
    q2s = np.linspace(box.q2_min, box.q2_min / n2, n2)
    seeds.extend(complex(a, b) for a in q1s for b in q2s)
    return seeds


def find_poles(family, alpha: float, box: SearchBox | None = None,
               max_pairs: int | None = None) -> list[ResonancePole]:
    """Off-axis zeros with 0 < q1 <= q1_max and q2_min <= q2 < 0, ordered by q1.

    Only the q1 > 0 member of each mirror pair is returned. Seeds that diverge
    or leave the box are dropped; roots closer than 1e-8 are merged.
    """
    family = EnergyBranch.parse(family)
    _check_alpha(alpha)
    box = box or SearchBox()
    found: list[tuple[complex, float]] = []
    for seed in _seeds(family, box):
        root = _newton(family, seed, alpha)
        if root is None or not np.isfinite(root):
            continue
        if abs(root.real) < Q1_MIN_THRESHOLD or not box.contains(root):
            continue
        residual = abs(continuation(family, root, alpha))
        if residual >= RESIDUAL_TOL:
            continue
        for i, (other, other_res) in enumerate(found):
            if abs(other - root) < DEDUP_DISTANCE:
                if residual < other_res:
                    found[i] = (root, residual)
                break
        else:
            found.append((root, residual))
    found.sort(key=lambda item: (item[0].real, item[0].imag))
    if max_pairs is not None:
        found = found[:max_pairs]
    return [ResonancePole(family, i + 1, root.real, root.imag, res, float(alpha))
            for i, (root, res) in enumerate(found)]


def mirror_residual(pole: ResonancePole) -> float:
    return abs(continuation(pole.family, complex(-pole.q1, pole.q2), pole.alpha))


def axis_roots(family, alpha: float, q2_min: float = -50.0) -> list[float]:
    """Zeros of the continued condition on the negative imaginary axis, q1 = 0.

    There G reduces to -q2 (1 -+ e^{-q2}) - alpha. These are reported apart
    from the resonances and are not classified.
    """
    family = EnergyBranch.parse(family)
    _check_alpha(alpha)
    s = family.sign

    def h(q2):
        return -q2 * (1.0 + s * math.exp(-q2)) - alpha

    grid = np.linspace(q2_min, 0.0, 2001)[:-1]
    values = np.array([h(v) for v in grid] + [-alpha])
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-2], values[1:-1]):
        if fa == 0.0:
            roots.append(float(a))
        elif fa * fb < 0.0:
            roots.append(brentq(h, a, b, xtol=1e-15))
    return roots


def curve_points(family, equation: str, alpha: float, q1_samples,
                 q2_min: float = -6.0, q2_points: int = 600) -> list[tuple[float, float]]:
    """All (q1, q2) with q2 in [q2_min, 0] on the selected real/imaginary-part curve.

    ``equation`` is ``"real"`` or ``"imag"``. For each q1 the scalar equation is
    scanned on a q2 grid for sign changes and each bracket is refined with
    Brent's method; an exact zero at q2 = 0 (the real-axis touch points) is kept.
    """
    family = EnergyBranch.parse(family)
    _check_alpha(alpha)
    equation = equation.lower()
    if equation not in ("real", "imag"):
        raise ValueError("equation must be 'real' or 'imag'")
    q2_grid = np.linspace(q2_min, 0.0, q2_points)
    out = []
    for q1 in np.asarray(q1_samples, dtype=float):
        if equation == "real":
            def h(q2, q1=q1):
                return float(real_equation(family, q1, q2, alpha))
        else:
            def h(q2, q1=q1):
                return float(imag_equation(family, q1, q2))
        values = np.array([h(v) for v in q2_grid])
        scale = max(1.0, float(np.max(np.abs(values))))
        for j in range(q2_points - 1):
            fa, fb = values[j], values[j + 1]
            if fa == 0.0:
                out.append((float(q1), float(q2_grid[j])))
            elif fa * fb < 0.0:
                out.append((float(q1), brentq(h, q2_grid[j], q2_grid[j + 1], xtol=1e-14)))
        if abs(values[-1]) <= 1e-12 * scale:
            out.append((float(q1), 0.0))
    return out
