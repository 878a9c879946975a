import random

import pytest

from minmod import symident
from minmod.symident import (IDENTITIES, Identity, PointRing, SymbolicRing, check_exact,
                             check_points, coeff_a, coeff_b, det_v3, det_xi31, sym_da, sym_db)


@pytest.mark.parametrize("ident", IDENTITIES, ids=lambda i: i.id)
def test_identity_by_expansion(ident):
    assert check_exact(ident)


@pytest.mark.parametrize("ident", IDENTITIES, ids=lambda i: i.id)
def test_identity_at_random_points(ident):
    assert check_points(ident, samples=20)


@pytest.mark.parametrize("name", sorted(symident.VERIFIERS))
def test_named_verifiers(name):
    assert symident.VERIFIERS[name]()


def _wrong_vandermonde(R):
    X = R.X
    return [(det_v3(X), (X[0] - X[1]) * (X[1] - X[2]) * (X[0] - X[2]))]


def _wrong_xi31_expansion(R):
    X, xi = R.X, R.xi
    a, b = coeff_a(X), coeff_b(X)
    return [(det_xi31(X, xi) * det_v3(X), 2 * a * a * sym_da(X, xi) + 8 * b * sym_db(X, xi))]


def _wrong_omega(R):
    # the derivative of det V3 without the sum X = 0 constraint is not -3 det Xi31
    return [(R.d(det_v3(R.X)), -3 * det_xi31(R.X, R.xi))]


@pytest.mark.parametrize("build,constrained", [
    (_wrong_vandermonde, False), (_wrong_xi31_expansion, True), (_wrong_omega, False)])
def test_negative_controls_fail(build, constrained):
    bad = Identity("bad", "control", "", build, constrained)
    assert not check_exact(bad)
    assert not check_points(bad, samples=5)


def test_point_ring_derivation_matches_symbolic():
    rng = random.Random(3)
    R = PointRing(rng, constrained=True)
    S = SymbolicRing(constrained=True)
    values = {"X1": R.X[0].a, "X2": R.X[1].a, "xi1": R.xi[0], "xi2": R.xi[1]}
    sym = S.d(det_v3(S.X)).evaluate(values)
    assert R.d(det_v3(R.X)) == sym


def test_suppression_degrees():
    assert symident.suppression_degrees() == [(1, 1, 1), (2, 3, 3), (3, 5, 5), (4, 7, 7)]


def test_run_identity_report():
    r = symident.run_identity(symident.BY_ID["csing"], samples=3)
    assert r.passed and r.group == "csing"
