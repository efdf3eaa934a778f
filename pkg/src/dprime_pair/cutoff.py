"""Ultraviolet-cutoff denominators of the regularised resolvent and their k -> inf limits.

With a momentum cutoff k the two rank-one coefficients of the regularised
resolvent have denominators pi/lambda(k) - 2 int_0^k p^2 trig^2(x0 p)/(p^2+|E|) dp.
Each integral splits exactly into elementary terms plus the single oscillatory
integral int_0^k cos(2 x0 p)/(p^2+|E|) dp, which is the only piece evaluated
numerically (cell by cell between half-periods of the cosine).

The term sin(2 x0 k)/(2 x0) in that split does not decay, so the denominators
only converge along cutoffs k_n = n pi / x0 where it vanishes. Away from that
sequence they oscillate in a band of half-width 1/(2 x0) around the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DegenerateCutoffError, ModelParams, lambda_of_cutoff
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    cos_rational_integral,
    half_period_edges,
    integrate,
    integrate_semi_infinite,
)

CONVERGENCE_COLUMNS = ("n", "k", "lambda_k", "d_sin", "d_cos", "delta_sin", "delta_cos")


@dataclass(frozen=True)
class CutoffSample:
    k: float
    lambda_k: float
    d_sin: float
    d_cos: float


def _check(k: float, x0: float, absE: float) -> None:
    if k < 0.0 or x0 < 0.0 or not absE > 0.0:
        raise ValueError("need k >= 0, x0 >= 0 and |E| > 0")


def _elementary(k: float, x0: float, absE: float) -> tuple[float, float]:
    """Return (k * sin(2 x0 k)/(2 x0 k), sqrt|E| * atan(k/sqrt|E|))."""
    root = math.sqrt(absE)
    wave = k if x0 == 0.0 else math.sin(2.0 * x0 * k) / (2.0 * x0)
    return wave, root * math.atan(k / root)


def oscillatory_remainder(k: float, x0: float, absE: float,
                          spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """int_0^k cos(2 x0 p)/(p^2+|E|) dp."""
    _check(k, x0, absE)
    if x0 == 0.0:
        root = math.sqrt(absE)
        return math.atan(k / root) / root
    return cos_rational_integral(2.0 * x0, absE, k, spec)


def oscillatory_remainder_limit(x0: float, absE: float) -> float:
    """k -> inf value (pi/(2 sqrt|E|)) exp(-2 x0 sqrt|E|)."""
    root = math.sqrt(absE)
    return 0.5 * math.pi / root * math.exp(-2.0 * x0 * root)


def cutoff_integral_sin(k: float, x0: float, absE: float,
                        spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """2 int_0^k p^2 sin^2(x0 p)/(p^2+|E|) dp."""
    _check(k, x0, absE)
    if k == 0.0 or x0 == 0.0:
        return 0.0
    wave, arctan_term = _elementary(k, x0, absE)
    return (k - wave) - arctan_term + absE * oscillatory_remainder(k, x0, absE, spec)


def cutoff_integral_cos(k: float, x0: float, absE: float,
                        spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """2 int_0^k p^2 cos^2(x0 p)/(p^2+|E|) dp."""
    _check(k, x0, absE)
    if k == 0.0:
        return 0.0
    wave, arctan_term = _elementary(k, x0, absE)
    return (k + wave) - arctan_term - absE * oscillatory_remainder(k, x0, absE, spec)


def denominators(k: float, params: ModelParams, absE: float,
                 spec: QuadratureSpec = DEFAULT_SPEC) -> CutoffSample:
    """Both cutoff denominators pi/lambda(k) - (cutoff integral)."""
    lam = lambda_of_cutoff(params.beta, k)
    inv = math.pi / lam
    return CutoffSample(
        k=float(k),
        lambda_k=lam,
        d_sin=inv - cutoff_integral_sin(k, params.x0, absE, spec),
        d_cos=inv - cutoff_integral_cos(k, params.x0, absE, spec),
    )


def denominator_limits(params: ModelParams, absE: float) -> tuple[float, float]:
    """Closed-form k -> inf limits pi/beta + (pi sqrt|E|/2)(1 -+ exp(-2 x0 sqrt|E|))."""
    if not absE > 0.0:
        raise ValueError("|E| must be positive")
    root = math.sqrt(absE)
    decay = math.exp(-2.0 * params.x0 * root)
    base = math.pi / params.beta
    half = 0.5 * math.pi * root
    return base - half * math.expm1(-2.0 * params.x0 * root), base + half * (1.0 + decay)


def trace_identities(absE: float, spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float, float]:
    """Quadrature of the three free-resolvent traces.

    Returns ((1/pi) int_R dp/(p^2+|E|), (1/pi) int_R p^2/(p^2+|E|)^2 dp,
    int_0^inf p^2/(p^2+|E|)^2 dp), whose closed forms are 1/sqrt|E|,
    1/(2 sqrt|E|) and pi/(4 sqrt|E|).
    """
    if not absE > 0.0:
        raise ValueError("|E| must be positive")
    # scale the map so the bulk of each integrand sits mid-range
    scale = math.sqrt(absE)
    lorentz = integrate_semi_infinite(lambda p: scale / (scale * scale * p * p + absE), 0.0, spec).value
    squared = integrate_semi_infinite(
        lambda p: scale * (scale * p) ** 2 / ((scale * scale * p * p + absE) ** 2), 0.0, spec
    ).value
    return 2.0 * lorentz / math.pi, 2.0 * squared / math.pi, squared


@dataclass(frozen=True)
class ConvergenceRun:
    """Denominators along k_n = n pi / x0 and their distance from the limits."""

    params: ModelParams
    absE: float
    n: np.ndarray
    k: np.ndarray
    lambda_k: np.ndarray
    d_sin: np.ndarray
    d_cos: np.ndarray
    limit_sin: float
    limit_cos: float
    skipped: tuple[int, ...] = ()

    @property
    def delta_sin(self) -> np.ndarray:
        return np.abs(self.d_sin - self.limit_sin)

    @property
    def delta_cos(self) -> np.ndarray:
        return np.abs(self.d_cos - self.limit_cos)

    def samples(self) -> list[CutoffSample]:
        return [CutoffSample(float(k), float(l), float(s), float(c))
                for k, l, s, c in zip(self.k, self.lambda_k, self.d_sin, self.d_cos)]

    def records(self) -> list[dict]:
        ds, dc = self.delta_sin, self.delta_cos
        return [
            {"n": int(self.n[i]), "k": float(self.k[i]), "lambda_k": float(self.lambda_k[i]),
             "d_sin": float(self.d_sin[i]), "d_cos": float(self.d_cos[i]),
             "delta_sin": float(ds[i]), "delta_cos": float(dc[i])}
            for i in range(self.n.size)
        ]

    def richardson(self) -> tuple[float, float]:
        """Extrapolate d = L + c/k from the last two samples."""
        k1, k2 = self.k[-2], self.k[-1]
        w = k2 / (k2 - k1)
        ls = w * self.d_sin[-1] - (w - 1.0) * self.d_sin[-2]
        lc = w * self.d_cos[-1] - (w - 1.0) * self.d_cos[-2]
        return float(ls), float(lc)

    def loglog_slope(self, which: str = "sin", n_min: int = 10) -> float:
        delta = self.delta_sin if which == "sin" else self.delta_cos
        mask = self.n >= n_min
        return float(np.polyfit(np.log(self.k[mask]), np.log(delta[mask]), 1)[0])


def convergence_run(params: ModelParams, absE: float, n_max: int,
                    spec: QuadratureSpec = DEFAULT_SPEC) -> ConvergenceRun:
    """Evaluate both denominators at every k_n = n pi/x0, n = 1..n_max.

    The oscillatory integral is computed once on half-period cells up to
    k_{n_max} and accumulated, so k_n always lands on a cell edge. Cutoffs that
    hit the pole of lambda(k) are skipped and listed in ``skipped``.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not absE > 0.0:
        raise ValueError("|E| must be positive")
    x0, beta = params.x0, params.beta
    omega = 2.0 * x0
    k_top = n_max * math.pi / x0
    edges = half_period_edges(omega, k_top)
    cells = integrate(lambda p: np.cos(omega * p) / (p * p + absE), edges, spec, per_cell=True).cell_values
    # k_n sits after 2n half-period cells
    partial = np.cumsum(cells)
    n_all = np.arange(1, n_max + 1)
    remainder = partial[2 * n_all - 1]

    k = n_all * math.pi / x0
    root = math.sqrt(absE)
    arctan_term = root * np.arctan(k / root)
    # sin(2 x0 k_n) = 0 exactly along this sequence
    i_sin = k - arctan_term + absE * remainder
    i_cos = k - arctan_term - absE * remainder

    keep, lam, skipped = [], [], []
    for i, kn in enumerate(k):
        try:
            lam.append(lambda_of_cutoff(beta, float(kn)))
            keep.append(i)
        except DegenerateCutoffError:
            skipped.append(int(n_all[i]))
    keep = np.array(keep, dtype=int)
    lam = np.array(lam)
    inv = math.pi / lam
    limit_sin, limit_cos = denominator_limits(params, absE)
    return ConvergenceRun(
        params=params, absE=absE, n=n_all[keep], k=k[keep], lambda_k=lam,
        d_sin=inv - i_sin[keep], d_cos=inv - i_cos[keep],
        limit_sin=limit_sin, limit_cos=limit_cos, skipped=tuple(skipped),
    )


def limit_zero(branch, params: ModelParams) -> float:
    """|E| at which the closed-form limit of the ``branch`` denominator vanishes.

    Located by bracketed root finding on the closed form alone, independent of
    the spectral solver, so the two can be cross-checked.
    """
    from scipy.optimize import brentq

    from .model import EnergyBranch

    branch = EnergyBranch.parse(branch)
    params.require_attractive()
    idx = 0 if branch.value == "ground" else 1
    b = abs(params.beta)

    def g(root):
        return denominator_limits(params, root * root)[idx]

    if idx == 0:
        lo, hi = 2.0 / b, 2.0 / b + 1.0
        while g(hi) <= 0.0:
            hi = 2.0 / b + 2.0 * (hi - 2.0 / b)
        if g(lo) >= 0.0:
            return lo * lo
    else:
        lo, hi = 1.0 / b, 2.0 / b
        if g(hi) <= 0.0:
            return hi * hi
    root = brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return root * root
