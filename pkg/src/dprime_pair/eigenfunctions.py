"""Position-space bound states and the jump-condition check at the two centres.

With kappa = sqrt(|E|) the two eigenvectors are

    f(x) = (1/(2 kappa)) d/dx [exp(-kappa|x - x0|) -+ exp(-kappa|x + x0|)]
         = (1/2) [-sgn(x - x0) e^{-kappa|x - x0|} +- sgn(x + x0) e^{-kappa|x + x0|}]

(minus inside the bracket for the ground state, which is even; plus for the
excited state, which is odd). Each jumps by -+1 at the centres while its
derivative stays continuous, so the nonlocal delta-prime matching condition
psi(c+) - psi(c-) = beta psi'(c) reduces to the branch eigenvalue equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import GROUND, EnergyBranch
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate
from .spectrum import SpectralPoint


@dataclass(frozen=True)
class BoundStateFunction:
    branch: EnergyBranch
    kappa: float
    x0: float
    normalization: float = 1.0

    def __post_init__(self):
        if not self.kappa > 0.0:
            raise ValueError("kappa must be positive")
        if not self.x0 > 0.0:
            raise ValueError("x0 must be positive")

    @classmethod
    def from_point(cls, point: SpectralPoint, normalize: bool = False) -> "BoundStateFunction":
        f = cls(point.branch, math.sqrt(-float(point.energy)), point.x0)
        return f.normalized() if normalize else f

    @property
    def _pair_sign(self) -> float:
        # sign in front of the -x0 exponential after differentiation
        return 1.0 if self.branch is GROUND else -1.0

    @property
    def parity(self) -> int:
        return 1 if self.branch is GROUND else -1

    def norm_squared(self) -> float:
        """Closed-form integral of f^2 over the line, including ``normalization``."""
        k, x0 = self.kappa, self.x0
        cross = math.exp(-2.0 * k * x0) * (1.0 - 2.0 * k * x0)
        raw = (1.0 - self._pair_sign * cross) / (2.0 * k)
        return raw * self.normalization ** 2

    def normalized(self) -> "BoundStateFunction":
        raw = BoundStateFunction(self.branch, self.kappa, self.x0)
        return BoundStateFunction(self.branch, self.kappa, self.x0, 1.0 / math.sqrt(raw.norm_squared()))

    def __call__(self, x):
        return evaluate(self, x)


def evaluate(f: BoundStateFunction, x):
    """Value of the bound state at ``x``; the kinks at +-x0 must be avoided."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(np.abs(x) - f.x0) == 0.0):
        raise ValueError("f is discontinuous at +-x0; use one_sided_values there")
    k = f.kappa
    d_plus, d_minus = x - f.x0, x + f.x0
    value = 0.5 * (-np.sign(d_plus) * np.exp(-k * np.abs(d_plus))
                   + f._pair_sign * np.sign(d_minus) * np.exp(-k * np.abs(d_minus)))
    value = value * f.normalization
    return float(value) if value.ndim == 0 else value


def derivative(f: BoundStateFunction, x):
    """Derivative away from the kinks; it extends continuously through them."""
    x = np.asarray(x, dtype=float)
    k = f.kappa
    value = 0.5 * k * (np.exp(-k * np.abs(x - f.x0)) - f._pair_sign * np.exp(-k * np.abs(x + f.x0)))
    value = value * f.normalization
    return float(value) if value.ndim == 0 else value


def one_sided_values(f: BoundStateFunction, centre: int = 1) -> tuple[float, float, float]:
    """(f(c-), f(c+), f'(c)) at c = +x0 (``centre=+1``) or c = -x0 (``centre=-1``).

    One-sided limits are taken term by term: the exponential at the centre is
    1 and its sign factor is -1 on the left and +1 on the right.
    """
    if centre not in (1, -1):
        raise ValueError("centre must be +1 or -1")
    k, x0, s = f.kappa, f.x0, f._pair_sign
    far = math.exp(-2.0 * k * x0)
    if centre == 1:
        # near term -sgn(x - x0)/2, far term s * sgn(2 x0) e/2
        left = 0.5 * (1.0 + s * far)
        right = 0.5 * (-1.0 + s * far)
    else:
        # near term s * sgn(x + x0)/2, far term -sgn(-2 x0) e/2 = +e/2
        left = 0.5 * (far - s)
        right = 0.5 * (far + s)
    n = f.normalization
    return left * n, right * n, float(derivative(f, centre * x0))


def one_sided_derivatives(f: BoundStateFunction, centre: int = 1) -> tuple[float, float]:
    """Left and right limits of f' at a centre, from the piecewise exponentials."""
    if centre not in (1, -1):
        raise ValueError("centre must be +1 or -1")
    k, x0, s = f.kappa, f.x0, f._pair_sign
    far = math.exp(-2.0 * k * x0)
    # d/dx of -sgn(x-x0) e^{-k|x-x0|}/2 is +k e/2 on both sides; likewise for the other term
    if centre == 1:
        near_l = near_r = 0.5 * k
        far_term = -s * 0.5 * k * far
    else:
        near_l = near_r = -s * 0.5 * k
        far_term = 0.5 * k * far
    n = f.normalization
    return (near_l + far_term) * n, (near_r + far_term) * n


def matching_residual(f: BoundStateFunction, beta: float, centre: int = 1) -> float:
    """|(f(c+) - f(c-)) - beta f'(c)|, zero exactly when ``f`` is an eigenvector."""
    left, right, fprime = one_sided_values(f, centre)
    return abs((right - left) - beta * fprime) / f.normalization


def norm_squared_quadrature(f: BoundStateFunction, spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """Integral of f^2 over (-L, L) with L = 40/kappa, and the analytic tail bound beyond L."""
    half = 40.0 / f.kappa
    L = max(half, 2.0 * f.x0)
    edges = np.array([-L, -f.x0, 0.0, f.x0, L])
    value = integrate(lambda x: evaluate(f, x) ** 2, edges, spec).value
    tail = math.exp(-2.0 * f.kappa * (L - f.x0)) / f.kappa * f.normalization ** 2
    return value, tail


def sample(f: BoundStateFunction, xmin: float, xmax: float, points: int):
    """Grid samples (x, f(x)); grid points landing exactly on a kink are nudged by one ulp."""
    if points < 2 or not xmin < xmax:
        raise ValueError("need xmin < xmax and at least 2 points")
    x = np.linspace(xmin, xmax, points)
    # a symmetric grid must stay symmetric for parity checks
    if xmin == -xmax:
        x = 0.5 * (x - x[::-1])
    on_kink = np.abs(np.abs(x) - f.x0) == 0.0
    x[on_kink] = np.nextafter(x[on_kink], np.sign(x[on_kink]) * np.inf)
    return x, evaluate(f, x)
