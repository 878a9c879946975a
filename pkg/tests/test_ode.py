from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from minmod import modforms, ode
from minmod.characters import ModelSpec, character
from minmod.qseries import QSeries

NUS = (3, 5, 7, 9, 11, 13)


@pytest.mark.parametrize("nu", NUS)
def test_reference_table(nu):
    assert ode.compare_with_table(nu) == []


def test_selected_entries():
    assert ode.derive_alphas(5).alphas == {0: Fraction(-11, 3600)}
    op7 = ode.derive_alphas(7)
    assert op7.alphas == {1: Fraction(-35, 1764), 0: Fraction(85, 74088)}
    assert ode.derive_alphas(13).alpha_cusp == Fraction(5 ** 2 * 7 * 11 * 23 ** 2 * 167,
                                                        2 ** 5 * 3 ** 2 * 13 ** 4 * 691)
    assert ode.derive_alphas(3).alphas == {}


@pytest.mark.parametrize("nu", NUS)
def test_characters_in_kernel(nu):
    spec = ModelSpec(nu)
    op = ode.derive_alphas(spec)
    for s in range(1, spec.M + 1):
        assert ode.apply(op, character(spec, s, 51), window=50).is_zero()


def test_kernel_check_is_sensitive():
    op = ode.derive_alphas(7)
    bumped = ode.OdeOperator(op.M, {**op.alphas, 0: op.alphas[0] + Fraction(1, 10 ** 6)})
    assert not ode.apply(bumped, character(7, 1, 20)).is_zero()
    # eta is not a (2,7) character
    assert not ode.apply(op, modforms.eta(20)).is_zero()


@given(st.integers(0, 6), st.builds(Fraction, st.integers(-50, 50), st.integers(1, 60)))
def test_constant_term_of_serre_tower(m, kappa):
    # D^m q^kappa = prod_{l<m} (kappa - l/6) q^kappa + higher terms
    f = QSeries.monomial(kappa, 1, 8)
    g = modforms.serre_tower(f, m)
    assert g.coeff(kappa) == ode.poly_eval(ode.falling_sixths(m), kappa)


def test_indicial_roots():
    for nu in NUS:
        poly = ode.IndicialPolynomial.from_operator(ode.derive_alphas(nu))
        assert all(poly(k) == 0 for k in ModelSpec(nu).kappas)
        assert poly.degree == ModelSpec(nu).M


def test_second_order_25():
    assert ode.second_order_check_25(64)


def test_e12_rewrite():
    u, v = ode.e12_rewrite(ode.derive_alphas(13))
    assert (u, v) == (ode.E12_PREFACTOR * ode.E12_WEIGHTS[0], ode.E12_PREFACTOR * ode.E12_WEIGHTS[1])


def test_wronskian_reconstructs_25_operator():
    w0, w1, w2 = ode.wronskian_ode([character(5, s, 40) for s in (1, 2)])
    e4 = modforms.eisenstein(4, 40)
    assert w1.is_zero()
    assert (w0 - (w2 * e4).scale(Fraction(-11, 3600))).is_zero()


def test_boundary_exponents():
    assert ode.boundary_exponents_25() == (Fraction(-1, 30), Fraction(11, 30))


def test_errors():
    with pytest.raises(ode.SingularSystem):
        ode._solve_alphas([Fraction(1, 2), Fraction(1, 2)], 2)
    with pytest.raises(ode.ConsistencyFailure):
        ode._solve_alphas([Fraction(0), Fraction(1)], 2)
    with pytest.raises(ValueError):
        ode.derive_alphas(15)
    with pytest.raises(ode.InsufficientTruncation):
        ode.apply(ode.derive_alphas(5), character(5, 1, 10), window=50)
    with pytest.raises(ode.InsufficientTruncation):
        ode.wronskian_ode([character(5, 1, 2), character(5, 2, 2)])


def test_operator_json():
    d = ode.derive_alphas(13).to_dict()
    assert d["M"] == 6
    assert d["alpha_cusp"] == str(ode.REFERENCE_TABLE[13]["cusp"])
    assert d["alphas"]["4"] == str(Fraction(-7 * 13 * 67, 156 ** 2))
