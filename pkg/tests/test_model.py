import math
import pickle

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dprime_pair.model import (
    EXCITED,
    GROUND,
    DegenerateCutoffError,
    Energy,
    EnergyBranch,
    ModelParams,
    alpha_of,
    branch_bracket,
    branch_function,
    branch_function_kappa,
    lambda_of_cutoff,
)
from oracles import bisection_energy, branch_value_E

betas = st.floats(-20.0, -0.1)
x0s = st.floats(0.01, 10.0)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(0.0, 1.0)
    with pytest.raises(ValueError):
        ModelParams(-1.0, 0.0)
    with pytest.raises(ValueError):
        ModelParams(-1.0, -2.0)
    with pytest.raises(ValueError):
        ModelParams(float("nan"), 1.0)
    with pytest.raises(ValueError, match="beta must be negative"):
        ModelParams(1.0, 1.0).require_attractive()


def test_branch_parse():
    assert EnergyBranch.parse("Ground") is GROUND
    assert EnergyBranch.parse(EXCITED) is EXCITED
    with pytest.raises(ValueError):
        EnergyBranch.parse("middle")


@pytest.mark.parametrize("x0", [0.05, 0.5, 1.0, 3.0])
def test_ground_at_threshold_is_negative(x0):
    F = branch_function(GROUND, -4.0, ModelParams(-1.0, x0))
    assert -1.0 < F < 0.0
    assert F == pytest.approx(-math.exp(-4.0 * x0), rel=1e-14)


def test_ground_large_separation_root_at_minus_four():
    assert branch_function(GROUND, -4.0, ModelParams(-1.0, 60.0)) == pytest.approx(0.0, abs=1e-15)


def test_excited_solved_by_bisection_has_small_value():
    E1 = bisection_energy("excited", -1.0, 1.0)
    assert abs(branch_function(EXCITED, E1, ModelParams(-1.0, 1.0))) < 1e-12


def test_branch_function_matches_E_form():
    for E in (-0.3, -2.0, -17.5):
        for branch in (GROUND, EXCITED):
            got = branch_function(branch, E, ModelParams(-1.3, 0.4))
            assert got == pytest.approx(branch_value_E(branch.value, E, -1.3, 0.4), rel=1e-14, abs=1e-15)


def test_branch_function_rejects_bad_inputs():
    with pytest.raises(ValueError):
        branch_function(GROUND, 0.0, ModelParams(-1.0, 1.0))
    with pytest.raises(ValueError):
        branch_function(GROUND, 1.0, ModelParams(-1.0, 1.0))
    with pytest.raises(ValueError, match="beta must be negative"):
        branch_function(GROUND, -1.0, ModelParams(2.0, 1.0))


def test_brackets():
    assert branch_bracket(GROUND, -2.0) == (-math.inf, -1.0)
    assert branch_bracket(EXCITED, -2.0) == (-1.0, -0.25)


@given(betas, x0s)
def test_ground_single_sign_change(beta, x0):
    b = abs(beta)
    kappa = np.linspace(2.0 / b, 2.0 / b + 50.0 / b + 1.0 / x0, 1000)
    F = branch_function_kappa(GROUND, kappa, beta, x0)
    assert np.all(np.diff(F) > 0.0)
    assert np.count_nonzero(np.diff(np.sign(F))) == 1


@given(betas, x0s, st.floats(1e-3, 1e3))
def test_ground_below_excited(beta, x0, absE):
    p = ModelParams(beta, x0)
    f0, f1 = branch_function(GROUND, -absE, p), branch_function(EXCITED, -absE, p)
    kappa = math.sqrt(absE)
    # the gap is kappa e^{-2 x0 kappa} > 0, which may fall below one ulp of F;
    # rounding scales with the summands 1/beta and kappa, not with F itself
    assert f0 <= f1
    ulps = 4.0 * np.finfo(float).eps * (1.0 / abs(beta) + kappa)
    assert f1 - f0 == pytest.approx(kappa * math.exp(-2.0 * x0 * kappa), rel=1e-12, abs=ulps)


@given(betas, x0s, st.floats(1e-2, 1e2), st.floats(0.1, 10.0))
def test_scaling_relation(beta, x0, absE, s):
    # F(s^2 E; beta/s, x0/s) = s F(E; beta, x0)
    for branch in (GROUND, EXCITED):
        lhs = branch_function(branch, -s * s * absE, ModelParams(beta / s, x0 / s))
        rhs = s * branch_function(branch, -absE, ModelParams(beta, x0))
        assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-11 * (s / abs(beta) + s * math.sqrt(absE)))


@pytest.mark.parametrize("beta,x0,alpha", [(-1.0, 1.0, -4.0), (-2.0, 3.0, -6.0), (-4.0 / 6.0, 1.0, -6.0)])
def test_alpha_examples(beta, x0, alpha):
    assert alpha_of(ModelParams(beta, x0)) == pytest.approx(alpha, rel=1e-15)
    assert ModelParams(beta, x0).alpha < 0.0


@given(betas, x0s, st.floats(0.1, 10.0))
def test_alpha_homogeneous(beta, x0, s):
    assert alpha_of(ModelParams(beta / s, x0 * s)) == pytest.approx(s * s * alpha_of(ModelParams(beta, x0)), rel=1e-14)


def test_lambda_example():
    assert lambda_of_cutoff(-math.pi, 3.0) == pytest.approx(math.pi / 2.0, rel=1e-15)


@given(st.one_of(st.floats(-50.0, -0.01), st.floats(0.01, 50.0)), st.floats(0.01, 1e4))
def test_lambda_fixing_identity(beta, k):
    try:
        lam = lambda_of_cutoff(beta, k)
    except DegenerateCutoffError:
        return
    scale = max(k, math.pi / abs(beta))
    assert abs(math.pi / lam - k - math.pi / beta) <= 1e-13 * scale * max(1.0, abs(beta * k + math.pi) ** -1 * scale)


def test_lambda_pole():
    with pytest.raises(DegenerateCutoffError):
        lambda_of_cutoff(-1.0, math.pi)
    # repulsive couplings are allowed here
    assert lambda_of_cutoff(2.0, 1.0) > 0.0


def test_energy_type():
    with pytest.raises(ValueError):
        Energy(0.0)
    E = Energy(-4.1, beta=-1.0, shift=0.0124)
    assert isinstance(E + 1.0, float) and not isinstance(E + 1.0, Energy)
    assert E.shift_for(-1.0) == 0.0124
    assert E.shift_for(-2.0) is None
    F = pickle.loads(pickle.dumps(E))
    assert float(F) == -4.1 and F.shift == 0.0124 and F.beta == -1.0
    assert repr(Energy(-1.5)) == "Energy(-1.5)"
