from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from minmod import hypergeom
from minmod.hypergeom import HypergeomParams, f21_series, params_for_k, substitution_residual

F = Fraction
rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))


def test_allowed_k():
    ks = hypergeom.allowed_k()
    assert ks == (F(-7, 10), F(-11, 10))
    assert sum(ks) == F(-9, 5) and ks[0] * ks[1] == F(77, 100)


def test_tables():
    p = params_for_k(F(-7, 10))
    assert {p.A, p.B} == {F(3, 10), F(-1, 10)} and p.C == F(3, 5)
    assert p.A * p.B == F(-3, 100)
    q = params_for_k(F(-11, 10))
    assert {q.A, q.B} == {F(7, 10), F(11, 10)} and q.C == F(7, 5)
    assert q.A * q.B == F(77, 100)


def test_invalid_k():
    with pytest.raises(hypergeom.InvalidK):
        params_for_k(F(1, 2))


def test_first_coefficients_from_term_ratio():
    p = params_for_k(F(-7, 10))
    a = f21_series(p, 4).coefficients
    assert a[0] == 1 and a[1] == p.A * p.B / p.C == F(-1, 20)
    assert a[2] == a[1] * (p.A + 1) * (p.B + 1) / ((p.C + 1) * 2)


@pytest.mark.parametrize("k", [F(-7, 10), F(-11, 10)])
@pytest.mark.parametrize("second", [False, True])
@pytest.mark.parametrize("at_one", [False, True])
def test_substitution_residual_vanishes(k, second, at_one):
    p = params_for_k(k)
    q = p.at_one() if at_one else p
    sol = f21_series(q, 40, second)
    assert len(sol.coefficients) == 40
    assert not any(substitution_residual(sol))


def test_residual_detects_wrong_parameters():
    p = params_for_k(F(-7, 10))
    sol = f21_series(p, 10)
    wrong = HypergeomParams(p.A, p.B, p.C + 1, p.k)
    assert any(substitution_residual(sol, wrong))


@given(rationals, rationals, rationals)
def test_euler_transformation(a, b, c):
    # 2F1(a,b;c;z) = (1-z)^(c-a-b) 2F1(c-a,c-b;c;z), an independent oracle
    assume(not (c.denominator == 1 and c <= 0))
    n = 12
    lhs = f21_series(HypergeomParams(a, b, c, F(0)), n).coefficients
    rhs = f21_series(HypergeomParams(c - a, c - b, c, F(0)), n).coefficients
    e = c - a - b
    binom = [F(1)]
    for j in range(1, n):
        binom.append(binom[-1] * (e - j + 1) / j * -1)
    conv = [sum(binom[j] * rhs[i - j] for j in range(i + 1)) for i in range(n)]
    assert list(lhs) == conv


def test_terminating_series():
    p = HypergeomParams(F(0), F(1, 3), F(1, 2), F(0))
    assert f21_series(p, 6).coefficients == (1, 0, 0, 0, 0, 0)


def test_degenerate_parameters():
    with pytest.raises(hypergeom.DegenerateParameters):
        f21_series(HypergeomParams(F(1), F(1), F(-2), F(0)), 5)
    with pytest.raises(hypergeom.DegenerateParameters):
        f21_series(HypergeomParams(F(1), F(1), F(3), F(0)), 5, second=True)
    with pytest.raises(hypergeom.DegenerateParameters):
        f21_series(HypergeomParams(F(1), F(1), F(1), F(0)), 5, second=True)


def test_exponents_at_zero():
    assert params_for_k(F(-7, 10)).exponents_at_zero() == (0, F(2, 5))
    assert params_for_k(F(-11, 10)).exponents_at_zero() == (0, F(-2, 5))


def test_z1_symmetry():
    for k in hypergeom.allowed_k():
        assert hypergeom.z1_symmetry_check(params_for_k(k))


def test_gauge_chain_symbolic():
    g = hypergeom.gauge_ode_check()
    assert g["quadratic_matches"] and g["first_order_matches"]
    assert g["simple_pole_matches"] and g["leading_is_one"]
    assert not g["hypergeometric"]


def test_gauge_chain_specific_k():
    c = hypergeom.C_25
    assert hypergeom.gauge_ode_check(F(-7, 10), c)["hypergeometric"]
    assert hypergeom.gauge_ode_check(F(-11, 10), c)["hypergeometric"]
    assert not hypergeom.gauge_ode_check(0, c)["hypergeometric"]


def test_gauge_exponent_bookkeeping():
    c = hypergeom.C_25
    assert -c / 8 == F(11, 20)
    assert [hypergeom.gauge_exponent(k) for k in hypergeom.allowed_k()] == [F(-3, 20), F(-11, 20)]


@pytest.mark.parametrize("k", [F(-7, 10), F(-11, 10)])
@pytest.mark.parametrize("field", ["A", "B", "C", "k"])
def test_mutation_breaks_a_relation(k, field):
    p = params_for_k(k)
    assert p.consistent()
    values = {f: getattr(p, f) for f in ("A", "B", "C", "k")}
    values[field] += F(1, 9)
    assert not HypergeomParams(**values).consistent()


def test_run_reduction():
    assert all(hypergeom.run_reduction().values())
