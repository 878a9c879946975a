from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from minmod.multipoly import Dual, Frac, MultiPoly
from strategies import small_rationals

VARS = ("x", "y", "z")
monomials = st.lists(st.tuples(st.sampled_from(VARS), st.integers(1, 3)), max_size=3).map(
    lambda pairs: tuple(sorted({v: e for v, e in pairs}.items())))
polys = st.dictionaries(monomials, small_rationals, max_size=5).map(MultiPoly)
points = st.fixed_dictionaries({v: small_rationals for v in VARS})
IMAGES = {"x": MultiPoly.var("y") * 2, "y": MultiPoly.var("x") * MultiPoly.var("z"), "z": MultiPoly.const(3)}


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == MultiPoly()


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@given(polys, polys)
def test_derivation_is_leibniz(a, b):
    assert (a * b).derive(IMAGES) == a.derive(IMAGES) * b + a * b.derive(IMAGES)
    assert (a + b).derive(IMAGES) == a.derive(IMAGES) + b.derive(IMAGES)


@given(polys, polys)
def test_substitution_is_a_homomorphism(a, b):
    m = {"x": MultiPoly.var("y") + 1, "z": Fraction(2, 3)}
    assert (a * b).substitute(m) == a.substitute(m) * b.substitute(m)


@given(polys, st.integers(0, 4))
def test_power(a, n):
    out = MultiPoly.const(1)
    for _ in range(n):
        out = out * a
    assert a ** n == out


@given(polys, polys.filter(bool), polys.filter(bool))
def test_fraction_arithmetic(a, b, c):
    assert Frac(a, b) + Frac(c, b) == Frac(a + c, b)
    assert Frac(a * c, b * c) == Frac(a, b)
    assert Frac(a, b) / Frac(c, 1) == Frac(a, b * c)


def test_fraction_rejects_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        Frac(MultiPoly.var("x"), 0)


@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_dual_numbers_differentiate(a, da, b, db):
    x, y = Dual(a, da), Dual(b, db)
    assert (x * y).b == da * b + a * db
    if b:
        assert (x / y).b == (da * b - a * db) / (b * b)
    assert (x ** 3).b == 3 * a * a * da


def test_degree_and_variables():
    p = MultiPoly.var("x") ** 3 * MultiPoly.var("y") + 2
    assert p.degree() == 4 and p.degree("x") == 3 and p.degree("z") == 0
    assert p.variables == ["x", "y"]
    assert MultiPoly().degree() == -1
