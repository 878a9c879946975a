import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from minmod import numeric

TAUS = [0.1 + 0.8j, -0.2 + 0.95j, 0.3 + 1.1j, 0.05 + 1.3j, -0.35 + 1.5j]
RHO = cmath.exp(2j * math.pi / 3)
G14 = math.gamma(0.25)


def test_special_values_at_i():
    assert numeric.eisenstein_value(4, 1j) == pytest.approx(3 * G14 ** 8 / (2 * math.pi) ** 6, rel=1e-12)
    assert numeric.eisenstein_value(2, 1j) == pytest.approx(3 / math.pi, rel=1e-12)
    assert abs(numeric.eisenstein_value(6, 1j)) < 1e-12
    assert numeric.eta_value(1j) == pytest.approx(G14 / (2 * math.pi ** 0.75), rel=1e-12)
    assert numeric.eval_form("j", 1j) == pytest.approx(1728, rel=1e-10)


def test_special_values_at_rho():
    assert abs(numeric.eisenstein_value(4, RHO)) < 1e-12
    assert abs(numeric.eval_form("j", RHO)) < 1e-8


def test_rogers_ramanujan_value_at_i():
    s5 = math.sqrt(5)
    assert numeric.eval_form("rcf", 1j) == pytest.approx(math.sqrt((5 + s5) / 2) - (1 + s5) / 2, rel=1e-12)


@given(st.floats(-0.5, 0.5), st.floats(0.6, 2.0))
def test_eta_modular_transformation(x, y):
    tau = complex(x, y)
    lhs = numeric.eta_value(-1 / tau)
    rhs = cmath.sqrt(-1j * tau) * numeric.eta_value(tau)
    assert abs(lhs - rhs) < 1e-10 * abs(rhs)


@pytest.mark.parametrize("tau", TAUS)
def test_frame_invariants(tau):
    f = numeric.frame_from_tau(tau, 1.3)
    inv = f.invariants
    assert inv["sum_roots"] < 1e-12 and inv["cubic_rel_err"] < 1e-12
    assert inv["delta0_rel_err"] < 1e-9
    assert abs(f.det_v3 ** 2 - f.delta0) < 1e-9 * abs(f.delta0)


@pytest.mark.parametrize("tau", TAUS)
def test_omega_formula(tau):
    d = numeric.omega_formula_details(tau)
    assert d["residual_determinant"] < 1e-6 and d["residual_log_delta0"] < 1e-6
    # Delta0 scales as lambda^12, so omega picks up 6 d log lambda
    assert d["residual_lambda"] < 1e-8
    assert d["omega_lambda_coefficient"] == pytest.approx(6, rel=1e-8)


@pytest.mark.parametrize("tau", TAUS)
def test_dtau_formula(tau):
    d = numeric.dtau_formula_details(tau)
    assert d["residual"] < 1e-6
    assert d["residual_chain_rule"] < 1e-12
    assert d["determinant_vs_sum"] < 1e-9


@pytest.mark.parametrize("check", [numeric.check_omega_formula, numeric.check_dtau_formula])
def test_finite_difference_order_two(check):
    assert numeric.fd_order(check, TAUS[2]) == pytest.approx(4, abs=0.5)


@pytest.mark.parametrize("s", [1, 2])
def test_transport(s):
    d = numeric.transport_check(s)
    assert d["rel_err_one"] < 1e-6 and d["rel_err_a1"] < 1e-6


def test_integration_zero_state_and_domain():
    zero = numeric.VariationState(0j, 0j)
    assert numeric.integrate_variation_system(1.5j, 0.9j, zero).state == zero
    with pytest.raises(numeric.ConvergenceDomain):
        numeric.integrate_variation_system(1.5j, 0.01j, numeric.closed_form_state(1, 1.5j))
    with pytest.raises(numeric.ConvergenceDomain):
        numeric.eisenstein_value(4, 0.01j)


def test_frame_rejects_zero_scale():
    with pytest.raises(ValueError):
        numeric.frame_from_tau(1j, 0)


def test_symmetric_s_matrix():
    d = numeric.check_smatrix()
    assert d["symmetric_residual"] < 1e-7
    assert d["involution_residual"] < 1e-12
    assert d["symmetric_det"] == pytest.approx(-1)
    assert d["norm_invariance"] < 1e-7
    S = numeric.symmetric_s_matrix()
    assert np.allclose(S, S.T)


def test_rotation_matrix_has_det_one():
    # a rotation has det +1 and cannot square to the identity
    P = numeric.rotation_s_matrix()
    assert np.linalg.det(P) == pytest.approx(1)
    assert not np.allclose(P @ P, np.eye(2))


def test_t_phases():
    assert numeric.check_t_phases() < 1e-10
