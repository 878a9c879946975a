from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from minmod.qseries import (NonUnitLeading, QSeries, QSeriesError, ZeroLeadingCoefficient,
                            q_pochhammer)
from strategies import nonzero_rationals, series


def test_constructor_normalises_leading_zeros_and_lattice():
    f = QSeries([0, 0, 1, 0, 3], offset=0, step=1, trunc=6)
    assert f.offset == 2 and f.coeffs == (1, 0, 3, 0) and f.prec == 6
    g = QSeries([1, 0, 3, 0], offset=0, step=2, trunc=4)
    assert g.step == 1 and g.coeffs == (1, 3) and g.prec == 2


def test_coarsening_never_loses_known_terms():
    f = QSeries([1], offset=0, step=2, trunc=1)
    assert f.coeffs == (1,) and f.prec == Fraction(1, 2)
    h = QSeries([1, 0, 0], offset=0, step=2, trunc=3)
    assert h.prec == Fraction(3, 2) and h.coeff(1) == 0


def test_coefficient_lookup_respects_window():
    f = QSeries([1, 2, 3], offset=Fraction(1, 5), step=1)
    assert f.coeff(Fraction(6, 5)) == 2
    assert f.coeff(Fraction(1, 2)) == 0
    with pytest.raises(QSeriesError):
        f.coeff(Fraction(16, 5))


def test_geometric_series():
    g = QSeries([1, -1], 0, 1, 20).invert()
    assert g.coeffs == tuple([Fraction(1)] * 20)


def test_euler_pentagonal_numbers():
    # (q)_inf = sum (-1)^k q^{k(3k-1)/2}; oracle: generalized pentagonal numbers
    n = 60
    want = [0] * n
    for k in range(-10, 11):
        e = k * (3 * k - 1) // 2
        if e < n:
            want[e] += (-1) ** k
    assert q_pochhammer(n, n).coefficient_list(n) == [Fraction(c) for c in want]


def test_mixed_lattice_addition():
    a = QSeries([1, 1, 1], offset=0, step=2)       # 1 + q^1/2 + q
    b = QSeries([1, 1], offset=Fraction(1, 3), step=1)
    s = a + b
    assert s.step == 6
    assert s.coeff(Fraction(1, 3)) == 1 and s.coeff(Fraction(1, 2)) == 1
    assert s.prec == min(a.prec, b.prec)


def test_errors():
    with pytest.raises(ZeroLeadingCoefficient):
        QSeries.zero(5).invert()
    with pytest.raises(NonUnitLeading):
        QSeries([2, 1], 0, 1, 4).pow_rational(Fraction(1, 2))
    with pytest.raises(ValueError):
        QSeries([1], step=0)


def test_json_round_trip():
    f = QSeries([Fraction(1, 3), 0, -2], offset=Fraction(-1, 60), step=1, trunc=5)
    d = f.to_dict()
    assert d["offset"] == "-1/60" and d["coeffs"][0] == "1/3"
    assert QSeries.from_dict(d) == f


@given(series(), series(), series())
def test_multiplication_associative(a, b, c):
    assert ((a * b) * c - a * (b * c)).is_zero()


@given(series(), series())
def test_multiplication_commutative(a, b):
    assert (a * b - b * a).is_zero()


@given(series(), series(), series())
def test_distributive(a, b, c):
    assert (a * (b + c) - (a * b + a * c)).is_zero()


@given(series())
def test_inverse(a):
    assert (a * a.invert() - QSeries.one(a.trunc)).is_zero()


@given(series(unit=True), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(-2, 5)]))
def test_rational_power_inverts(a, e):
    r = a.pow_rational(e)
    back = r.pow_rational(1 / e)
    assert (back - a).is_zero()


@given(series(), st.integers(0, 4))
def test_integer_power_matches_repeated_product(a, n):
    prod = QSeries.one(a.trunc)
    for _ in range(n):
        prod = prod * a
    assert (a ** n - prod).is_zero()


@given(series(), series())
def test_derivative_is_leibniz(a, b):
    assert ((a * b).derive_q() - (a.derive_q() * b + a * b.derive_q())).is_zero()


@given(series(), nonzero_rationals)
def test_shift_commutes_with_product(a, e):
    m = QSeries.monomial(e, 1, a.trunc)
    assert (a.shift(e) - a * m).is_zero()
