"""Parameters and defining scalar functions of the symmetric nonlocal delta-prime pair.

Units are hbar = 2m = 1, so the kinetic term is -d^2/dx^2 and the bound-state
momentum is kappa = sqrt(|E|).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class DegenerateCutoffError(ValueError):
    """The running coupling lambda(k) has a pole at the requested cutoff."""


class EnergyBranch(enum.Enum):
    GROUND = "ground"
    EXCITED = "excited"

    @property
    def sign(self) -> float:
        # -1 for the sin-kernel (ground) channel, +1 for the cos-kernel one
        return -1.0 if self is EnergyBranch.GROUND else 1.0

    @classmethod
    def parse(cls, value: "EnergyBranch | str") -> "EnergyBranch":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown branch {value!r}; expected 'ground' or 'excited'") from None


GROUND = EnergyBranch.GROUND
EXCITED = EnergyBranch.EXCITED


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``beta`` and half-distance ``x0`` between the two centres."""

    beta: float
    x0: float

    def __post_init__(self):
        if not math.isfinite(self.beta) or self.beta == 0.0:
            raise ValueError("beta must be finite and non-zero")
        if not math.isfinite(self.x0) or self.x0 <= 0.0:
            raise ValueError("x0 must be finite and strictly positive")

    @property
    def alpha(self) -> float:
        return alpha_of(self)

    def require_attractive(self) -> None:
        if self.beta >= 0.0:
            raise ValueError("beta must be negative")


class Energy(float):
    """A negative energy that may remember its offset from the -4/beta^2 threshold.

    ``shift`` is ``|beta| * sqrt(|E|) / 2 - 1``. Near the threshold that offset
    is exponentially small in ``x0`` and cannot be recovered from the float
    value alone, so the spectral solver stores it alongside. Arithmetic on an
    Energy returns plain floats.
    """

    __slots__ = ("beta", "shift")

    def __new__(cls, value: float, beta: float | None = None, shift: float | None = None):
        value = float(value)
        if not value < 0.0:
            raise ValueError(f"energy must be strictly negative, got {value!r}")
        obj = super().__new__(cls, value)
        obj.beta = None if beta is None else float(beta)
        obj.shift = None if shift is None else float(shift)
        return obj

    def shift_for(self, beta: float) -> float | None:
        if self.shift is not None and self.beta == float(beta):
            return self.shift
        return None

    def __repr__(self) -> str:
        return f"Energy({float(self)!r})"

    def __reduce__(self):
        return (Energy, (float(self), self.beta, self.shift))


def ground_threshold(beta: float) -> float:
    """Single-centre eigenvalue -4/beta^2 separating the two branches."""
    return -4.0 / (beta * beta)


def coalesced_eigenvalue(beta: float) -> float:
    """Excited-branch endpoint -1/beta^2 reached as the centres merge."""
    return -1.0 / (beta * beta)


def branch_bracket(branch: EnergyBranch, beta: float) -> tuple[float, float]:
    """Open energy interval holding the eigenvalue of ``branch``."""
    branch = EnergyBranch.parse(branch)
    if branch is GROUND:
        return (-math.inf, ground_threshold(beta))
    return (ground_threshold(beta), coalesced_eigenvalue(beta))


def _check_spectral(E: float, beta: float) -> None:
    if not E < 0.0:
        raise ValueError("energy must be strictly negative")
    if not beta < 0.0:
        raise ValueError("beta must be negative")


def branch_function_kappa(branch: EnergyBranch, kappa, beta: float, x0: float):
    """Eigenvalue function 1/beta + (kappa/2)(1 -+ exp(-2 x0 kappa)).

    Works elementwise on arrays. Ground uses the minus sign.
    """
    sign = EnergyBranch.parse(branch).sign
    return 1.0 / beta + 0.5 * kappa * (1.0 + sign * np.exp(-2.0 * x0 * kappa))


def branch_derivative_kappa(branch: EnergyBranch, kappa, beta: float, x0: float):
    """d/dkappa of :func:`branch_function_kappa`."""
    sign = EnergyBranch.parse(branch).sign
    decay = np.exp(-2.0 * x0 * kappa)
    return 0.5 * (1.0 + sign * decay) - sign * x0 * kappa * decay


def branch_function(branch: EnergyBranch, E: float, params: ModelParams) -> float:
    """Value of the branch eigenvalue condition at energy ``E``; roots are eigenvalues."""
    _check_spectral(E, params.beta)
    kappa = math.sqrt(-float(E))
    return branch_function_kappa(branch, kappa, params.beta, params.x0)


def alpha_of(params: ModelParams) -> float:
    """Dimensionless coupling 4 x0 / beta used in the momentum-plane equations."""
    return 4.0 * params.x0 / params.beta


def lambda_of_cutoff(beta: float, k: float) -> float:
    """Bare coupling lambda(k) = beta*pi/(beta*k + pi) fixed by pi/lambda = k + pi/beta."""
    if beta == 0.0:
        raise ValueError("beta must be non-zero")
    if not k > 0.0:
        raise ValueError("cutoff k must be positive")
    denom = beta * k + math.pi
    if abs(denom) <= 1e-12 * max(abs(beta * k), math.pi):
        raise DegenerateCutoffError(
            f"lambda(k) has a pole at k = -pi/beta = {-math.pi / beta!r}"
        )
    return beta * math.pi / denom
