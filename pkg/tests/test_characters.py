from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from minmod.characters import (IndexOutOfRange, ModelSpec, TadpoleForm, character,
                               character_product, character_sum, vacuum_dimension_table)


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


@lru_cache(maxsize=None)
def gordon_count(n, k, i):
    """Partitions of n with b_j - b_{j+k-1} >= 2 and at most i-1 parts equal to 1."""
    count = 0
    for p in partitions(n):
        if p.count(1) > i - 1:
            continue
        if all(p[j] - p[j + k - 1] >= 2 for j in range(len(p) - k + 1)):
            count += 1
    return count


@pytest.mark.parametrize("nu,s", [(5, 1), (5, 2), (7, 1), (7, 2), (7, 3), (9, 2), (9, 4)])
def test_against_gordon_partitions(nu, s):
    # parts-difference side of Gordon's theorem, by brute-force enumeration
    k = (nu - 1) // 2
    f = character(nu, s, 18)
    assert f.offset == ModelSpec(nu).kappa(s)
    assert f.coefficient_list(18) == [Fraction(gordon_count(n, k, s)) for n in range(18)]


@pytest.mark.parametrize("nu", [3, 5, 7, 9, 11, 13])
def test_sum_equals_product(nu):
    spec = ModelSpec(nu)
    for s in range(1, spec.M + 1):
        assert (character_sum(spec, s, 64) - character_product(spec, s, 64)).is_zero()


def test_leading_coefficients_nu5():
    assert character(5, 1, 10).coefficient_list(7) == [1, 0, 1, 1, 1, 1, 2]
    assert character(5, 2, 10).coefficient_list(7) == [1, 1, 1, 1, 2, 2, 3]
    assert character(5, 1, 10).offset == Fraction(11, 60)
    assert character(5, 2, 10).offset == Fraction(-1, 60)


def test_nu3_is_trivial():
    f = character_sum(3, 1, 10)
    assert f.offset == 0 and f.coefficient_list(10) == [1] + [0] * 9 and f.prec == 10
    assert (f - character_product(3, 1, 10)).is_zero()


def test_vacuum_dimensions():
    assert vacuum_dimension_table(ModelSpec(5), 7) == [1, 0, 1, 1, 1, 1, 2, 2]
    assert vacuum_dimension_table(5, 1)[1] == 0


@pytest.mark.parametrize("nu", [3, 5, 7, 9, 11, 13])
def test_model_data(nu):
    spec = ModelSpec(nu)
    assert spec.central_charge == 1 - Fraction(3 * (nu - 2) ** 2, nu)
    assert spec.kappa(spec.M) == Fraction(3 - nu, 24 * nu)
    # h_s = kappa_s - kappa_1 + ... : every kappa equals h - c/24 for the Kac weight
    for s in range(1, spec.M + 1):
        h = Fraction((nu - 2 * s) ** 2 - (nu - 2) ** 2, 8 * nu)
        assert spec.kappa(s) == h - spec.central_charge / 24


def test_model_spec_validation():
    for bad in (1, 2, 4, 10):
        with pytest.raises(ValueError):
            ModelSpec(bad)
    with pytest.raises(IndexOutOfRange):
        character(5, 3, 10)
    with pytest.raises(IndexOutOfRange):
        ModelSpec(7).kappa(0)


@given(st.integers(1, 8))
def test_tadpole_inverse(r):
    t = TadpoleForm.build(r)
    assert t.cartan_times_inverse() == [[int(i == j) for j in range(r)] for i in range(r)]
