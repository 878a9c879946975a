"""Exact checks of the determinant identities behind the (2,5) variation system.

Three branch points ``X1, X2, X3`` of ``p(x) = 4 prod (x - X_i)`` move with
one-forms ``xi_i = dX_i``.  Every identity is written once, generically over a
ring, and then checked two ways:

* symbolically, by full expansion in :class:`MultiPoly` (with ``X3 = -X1 - X2``
  and ``xi3 = -xi1 - xi2`` substituted when the identity needs ``sum X = 0``);
* at 20 random rational points, using dual numbers for the derivation ``d``.
"""
from dataclasses import dataclass
from fractions import Fraction
import random

from .multipoly import Dual, Frac, MultiPoly

C_MINIMAL = Fraction(-22, 5)


# -- generic building blocks -------------------------------------------------

def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def det_v3(X):
    return det3([[1, X[i], X[i] * X[i]] for i in range(3)])


def det_xi30(X, xi):
    return det3([list(X), [1, 1, 1], list(xi)])


def det_xi31(X, xi):
    return det3([list(X), [1, 1, 1], [xi[i] * X[i] for i in range(3)]])


def coeff_a(X):
    return X[0] * X[1] + X[0] * X[2] + X[1] * X[2]


def coeff_b(X):
    return -(X[0] * X[1] * X[2])


def sym_da(X, xi):
    """Sum of the distinct monomials ``xi_i X_j`` (``i != j``)."""
    return sum((xi[i] * X[j] for i in range(3) for j in range(3) if i != j), 0)


def sym_db(X, xi):
    return -(xi[0] * X[1] * X[2] + xi[1] * X[0] * X[2] + xi[2] * X[0] * X[1])


def node(X, i):
    """``(X_i - X_{i+1}) (X_{i+2} - X_i)``, indices mod 3."""
    return (X[i] - X[(i + 1) % 3]) * (X[(i + 2) % 3] - X[i])


def p_prime(X, s):
    out = 4
    for j in range(3):
        if j != s:
            out = out * (X[s] - X[j])
    return out


def cyclic(term):
    """``term(0) + term(1) + term(2)`` for a function of the rotated index."""
    return term(0) + term(1) + term(2)


def rot(seq, i):
    return tuple(seq[(i + k) % 3] for k in range(3))


# -- rings ----------------------------------------------------------------

class SymbolicRing:
    """Polynomial variables; constrained rings eliminate ``X3`` and ``xi3``."""

    exact = True

    def __init__(self, constrained):
        v = MultiPoly.var
        x1, x2, e1, e2 = v("X1"), v("X2"), v("xi1"), v("xi2")
        if constrained:
            self.X = (x1, x2, -x1 - x2)
            self.xi = (e1, e2, -e1 - e2)
            self._images = {"X1": e1, "X2": e2}
        else:
            self.X = (x1, x2, v("X3"))
            self.xi = (e1, e2, v("xi3"))
            self._images = {"X1": e1, "X2": e2, "X3": self.xi[2]}
        self.one, self.A1, self.c, self.x = v("one"), v("A1"), v("c"), v("x")

    def d(self, f):
        if isinstance(f, Frac):
            n, m = self.d(f.num), self.d(f.den)
            return Frac(n * f.den - f.num * m, f.den * f.den)
        if isinstance(f, MultiPoly):
            return f.derive(self._images)
        return 0

    @staticmethod
    def equal(lhs, rhs):
        return Frac._lift(lhs) == Frac._lift(rhs)


class PointRing:
    """Random rational point; ``X_i`` carry ``xi_i`` as an infinitesimal direction."""

    exact = False

    def __init__(self, rng, constrained):
        def q():
            return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

        X = [q(), q(), q()]
        xi = [q(), q(), q()]
        if constrained:
            X[2] = -X[0] - X[1]
            xi[2] = -xi[0] - xi[1]
        self.X = tuple(Dual(x, e) for x, e in zip(X, xi))
        self.xi = tuple(xi)
        self.one, self.A1, self.c, self.x = q() or Fraction(1), q(), q(), q()

    @staticmethod
    def d(f):
        return Dual(f.b) if isinstance(f, Dual) else 0

    @staticmethod
    def equal(lhs, rhs):
        def val(z):
            return z.a if isinstance(z, Dual) else Fraction(z)
        return val(lhs) == val(rhs)


# -- the identities ---------------------------------------------------------

def id_detv_product(R):
    X = R.X
    return [(det_v3(X), (X[0] - X[1]) * (X[1] - X[2]) * (X[2] - X[0]))]


def id_xi30_quotient(R):
    X, xi = R.X, R.xi
    q = det_xi30(X, xi) / det_v3(X)
    return [
        (q, cyclic(lambda i: rot(xi, i)[0] / node(rot(X, i), 0))),
        (q, -4 * sum((xi[s] / p_prime(X, s) for s in range(3)), 0)),
    ]


def id_xi31_quotient(R):
    X, xi = R.X, R.xi
    q = det_xi31(X, xi) / det_v3(X)
    return [
        (q, cyclic(lambda i: rot(xi, i)[0] * rot(X, i)[0] / node(rot(X, i), 0))),
        (q, -4 * sum((xi[s] * X[s] / p_prime(X, s) for s in range(3)), 0)),
    ]


def id_d_detv(R):
    X, xi = R.X, R.xi
    return [(R.d(det_v3(X)), -3 * det_xi31(X, xi))]


def id_omega_differences(R):
    X, xi = R.X, R.xi
    omega = -3 * det_xi31(X, xi) / det_v3(X)
    pairs = cyclic(lambda i: (rot(xi, i)[0] - rot(xi, i)[1]) / (rot(X, i)[0] - rot(X, i)[1]))
    return [(omega, pairs)]


def id_delta0_ab(R):
    a, b = coeff_a(R.X), coeff_b(R.X)
    v = det_v3(R.X)
    return [(v * v, -4 * a ** 3 - 27 * b ** 2)]


def id_omega_log_delta0(R):
    X, xi = R.X, R.xi
    a, b = coeff_a(X), coeff_b(X)
    return [(2 * (-3 * det_xi31(X, xi)) * det_v3(X), R.d(-4 * a ** 3 - 27 * b ** 2))]


def id_da_db(R):
    X, xi = R.X, R.xi
    return [(sym_da(X, xi), R.d(coeff_a(X))), (sym_db(X, xi), R.d(coeff_b(X)))]


def id_xi31_expansion(R):
    X, xi = R.X, R.xi
    a, b = coeff_a(X), coeff_b(X)
    rhs = 2 * a * a * sym_da(X, xi) + 9 * b * sym_db(X, xi)
    return [(det_xi31(X, xi) * det_v3(X), rhs)]


def id_xi31_expansion_special(R):
    # xi = X: both sides reduce to -Delta0
    X = R.X
    a, b = coeff_a(X), coeff_b(X)
    delta0 = det_v3(X) * det_v3(X)
    return [
        (det_xi31(X, X) * det_v3(X), -delta0),
        (2 * a * a * sym_da(X, X) + 9 * b * sym_db(X, X), -delta0),
    ]


def id_xi30_expansion(R):
    X, xi = R.X, R.xi
    a, b = coeff_a(X), coeff_b(X)
    rhs = 9 * b * sym_da(X, xi) - 6 * a * sym_db(X, xi)
    return [(det_xi30(X, xi) * det_v3(X), rhs)]


def id_xi30_expansion_special(R):
    # xi_i = X_i^2 - xi0 with xi0 the mean of X_i^2
    X = R.X
    xi0 = (X[0] * X[0] + X[1] * X[1] + X[2] * X[2]) * Fraction(1, 3)
    xi = tuple(X[i] * X[i] - xi0 for i in range(3))
    a, b = coeff_a(X), coeff_b(X)
    delta0 = det_v3(X) * det_v3(X)
    return [
        (det_xi30(X, xi) * det_v3(X), -delta0),
        (9 * b * sym_da(X, xi) - 6 * a * sym_db(X, xi), -delta0),
        (sym_da(X, xi), 3 * b),
        (sym_db(X, xi), Fraction(-2, 3) * a * a),
    ]


def id_cyclic_vanishing(R):
    X = R.X
    return [
        (cyclic(lambda i: 1 / node(rot(X, i), 0)), 0),
        (cyclic(lambda i: rot(X, i)[0] / node(rot(X, i), 0)), 0),
    ]


def id_x1_squared(R):
    X = R.X
    a2 = 4 * coeff_a(X)
    return [(X[0] * X[0], -a2 * Fraction(1, 4) + X[1] * X[2])]


def id_xi1x2x3(R):
    X, xi = R.X, R.xi
    a2 = 4 * coeff_a(X)
    lhs = cyclic(lambda i: rot(xi, i)[0] * rot(X, i)[1] * rot(X, i)[2] / node(rot(X, i), 0))
    return [(lhs, a2 * Fraction(1, 6) * (det_xi30(X, xi) / det_v3(X)))]


def _theta_cyclic_pair(R, c):
    X, xi = R.X, R.xi
    one, A1 = R.one, R.A1
    a = coeff_a(X)

    def theta(t):
        return -4 * c * t * one + A1

    def term(i):
        Y, e = rot(X, i), rot(xi, i)
        return -(theta(Y[0]) * (e[1] * Y[2] + e[2] * Y[1])) / node(Y, 0)

    v = det_v3(X)
    rhs = (-Fraction(8, 3) * c * a * one * (det_xi30(X, xi) / v)
           - 2 * A1 * (det_xi31(X, xi) / v))
    return cyclic(term), rhs


def id_theta_cyclic(R):
    return [_theta_cyclic_pair(R, R.c)]


def id_theta_cyclic_minimal(R):
    return [_theta_cyclic_pair(R, C_MINIMAL)]


def p1_coefficient(a1, a2, one, A1):
    """Constant connected two-point polynomial for the (2,5) model."""
    return (Fraction(-77, 400) * a1 * a1 * one + Fraction(1, 10) * a1 * A1
            + Fraction(143, 100) * a2 * one - Fraction(1, 16) * (A1 * A1 / one))


def id_csing(R):
    X, one, A1 = R.X, R.one, R.A1
    a = coeff_a(X)
    a1 = -4 * (X[0] + X[1] + X[2])
    a2 = 4 * a
    c = C_MINIMAL
    C = -2 * p1_coefficient(a1, a2, one, A1) - Fraction(1, 8) * (A1 * A1 / one) \
        - Fraction(8, 3) * c * a * one
    return [
        (C, Fraction(22, 75) * a * one),
        (C, -(c / 15) * a * one),
    ]


def _sum_over_pprime(X, xi, power):
    return sum((xi[s] * X[s] ** power / p_prime(X, s) for s in range(3)), 0)


def id_equivalence_first(R):
    # the <1> equation of the second system, rewritten with determinants
    X, xi, c, one, A1 = R.X, R.xi, R.c, R.one, R.A1
    v = det_v3(X)
    omega = -3 * det_xi31(X, xi) / v
    lhs = 2 * sum(((xi[s] / p_prime(X, s)) * (-c * X[s] * one + A1 * Fraction(1, 4))
                   for s in range(3)), 0)
    rhs = -(c / 6) * omega * one - (A1 * Fraction(1, 8)) * (det_xi30(X, xi) / v)
    return [(lhs, rhs)]


def id_equivalence_quadratic(R):
    X, xi = R.X, R.xi
    a = coeff_a(X)
    return [(_sum_over_pprime(X, xi, 2), -(a * Fraction(1, 3)) * _sum_over_pprime(X, xi, 0))]


def id_equivalence_constant_terms(R):
    # x-independent bookkeeping of (d - c/8 omega) <theta(x)> from the first system
    X, xi, one, A1, x = R.X, R.xi, R.one, R.A1, R.x
    c = C_MINIMAL
    a = coeff_a(X)
    v = det_v3(X)
    q30 = det_xi30(X, xi) / v
    omega = -3 * det_xi31(X, xi) / v
    one_eq = -(c / 6) * omega * one - Fraction(1, 8) * A1 * q30
    a1_eq = -(c / 15) * a * one * q30 - ((4 * c - 8) / 24) * omega * A1
    derived = -c * x * one_eq + Fraction(1, 4) * a1_eq
    display = ((c * x * A1 * Fraction(1, 8) - (c / 60) * a * one) * q30
               + Fraction(1, 6) * (c * c * x * one - Fraction(1, 2) * (c / 2 - 1) * A1) * omega)
    s0, s1 = _sum_over_pprime(X, xi, 0), _sum_over_pprime(X, xi, 1)
    line = (c * (-A1 * x * Fraction(1, 2) + a * one * Fraction(1, 15)) * s0
            + (Fraction(16, 5) * A1 + 2 * c * c * x * one) * s1)
    return [(derived, display), (display, line)]


def id_equivalence_expansions(R):
    # both expansions agree once the O(1/x) terms are dropped
    X, xi, one, A1, x = R.X, R.xi, R.one, R.A1, R.x
    c = C_MINIMAL
    a = coeff_a(X)
    s0, s1, s2 = (_sum_over_pprime(X, xi, k) for k in range(3))
    line = (c * (-A1 * x * Fraction(1, 2) + a * one * Fraction(1, 15)) * s0
            + (Fraction(16, 5) * A1 + 2 * c * c * x * one) * s1)
    other = (c * s2 * one
             + 16 * (c * c * Fraction(1, 8) * one * x + A1 * Fraction(1, 5)) * s1
             + 2 * c * (-A1 * x * Fraction(1, 4) + a * one * Fraction(1, 5)) * s0)
    return [(line, other)]


def suppression_degrees(max_m=4):
    """Numerator x-degree of cleared ``sum xi_s/(x - X_s)^m`` against the bound ``2m - 1``."""
    R = SymbolicRing(constrained=True)
    X, xi, x = R.X, R.xi, R.x
    out = []
    for m in range(1, max_m + 1):
        num = MultiPoly()
        for s in range(3):
            term = xi[s]
            for j in range(3):
                if j != s:
                    term = term * (x - X[j]) ** m
            num = num + term
        out.append((m, num.degree("x"), 2 * m - 1))
    return out


@dataclass(frozen=True)
class Identity:
    id: str
    group: str
    description: str
    build: object
    constrained: bool


IDENTITIES = [
    Identity("detV_product", "detV", "det V3 = (X1-X2)(X2-X3)(X3-X1)", id_detv_product, False),
    Identity("xi30_quotient", "xi_quotients", "det Xi30/det V3 as cyclic and p' sums", id_xi30_quotient, False),
    Identity("xi31_quotient", "xi_quotients", "det Xi31/det V3 as cyclic and p' sums", id_xi31_quotient, False),
    Identity("d_detV", "omega", "d det V3 = -3 det Xi31", id_d_detv, True),
    Identity("omega_differences", "omega", "omega = sum (xi_i - xi_j)/(X_i - X_j)", id_omega_differences, True),
    Identity("delta0_ab", "omega", "det V3^2 = -4a^3 - 27b^2", id_delta0_ab, True),
    Identity("omega_log_delta0", "omega", "omega = (1/2) d log Delta0", id_omega_log_delta0, True),
    Identity("da_db", "omega", "symmetrised sums equal da and db", id_da_db, False),
    Identity("xi31_expansion", "xi31_expansion", "det Xi31 det V3 = 2a^2 da + 9b db", id_xi31_expansion, True),
    Identity("xi31_expansion_special", "xi31_expansion", "xi = X gives -Delta0 on both sides", id_xi31_expansion_special, True),
    Identity("xi30_expansion", "xi30_expansion", "det Xi30 det V3 = 9b da - 6a db", id_xi30_expansion, True),
    Identity("xi30_expansion_special", "xi30_expansion", "xi = X^2 - xi0 gives -Delta0 on both sides", id_xi30_expansion_special, True),
    Identity("cyclic_vanishing", "theta_cyclic", "cyclic sums of 1/N and X/N vanish", id_cyclic_vanishing, False),
    Identity("x1_squared", "theta_cyclic", "X1^2 = -a2/4 + X2 X3", id_x1_squared, True),
    Identity("xi1x2x3", "theta_cyclic", "cyclic xi1 X2 X3/N1 = (a2/6) det Xi30/det V3", id_xi1x2x3, True),
    Identity("theta_cyclic", "theta_cyclic", "Theta cyclic sum in determinant form, symbolic c", id_theta_cyclic, True),
    Identity("theta_cyclic_minimal", "theta_cyclic", "same with c = -22/5", id_theta_cyclic_minimal, True),
    Identity("csing", "csing", "C_sing = (22/75) a <1> = -(c/15) a <1>", id_csing, True),
    Identity("equiv_first", "equivalence", "2 sum xi_s <theta(X_s)>/p'(X_s) in determinant form", id_equivalence_first, True),
    Identity("equiv_quadratic", "equivalence", "sum xi X^2/p' = -(a/3) sum xi/p'", id_equivalence_quadratic, True),
    Identity("equiv_constant_terms", "equivalence", "theta-equation from the first system", id_equivalence_constant_terms, True),
    Identity("equiv_expansions", "equivalence", "both theta expansions agree up to O(1/x)", id_equivalence_expansions, True),
]

BY_ID = {i.id: i for i in IDENTITIES}


@dataclass
class IdentityResult:
    id: str
    group: str
    description: str
    exact: bool
    spot: bool
    detail: str = ""

    @property
    def passed(self):
        return self.exact and self.spot


def check_exact(identity):
    R = SymbolicRing(identity.constrained)
    return all(R.equal(l, r) for l, r in identity.build(R))


def check_points(identity, samples=20, seed=0):
    rng = random.Random(f"{identity.id}:{seed}")
    done = 0
    attempts = 0
    while done < samples:
        attempts += 1
        if attempts > 50 * samples:
            raise RuntimeError(f"could not find regular sample points for {identity.id}")
        R = PointRing(rng, identity.constrained)
        try:
            pairs = identity.build(R)
        except ZeroDivisionError:
            continue
        if not all(R.equal(l, r) for l, r in pairs):
            return False
        done += 1
    return True


def run_identity(identity, samples=20, seed=0):
    exact = check_exact(identity)
    spot = check_points(identity, samples, seed)
    return IdentityResult(identity.id, identity.group, identity.description, exact, spot)


def run_group(group, samples=20):
    return [run_identity(i, samples) for i in IDENTITIES if i.group == group]


def _group_ok(group):
    return all(r.passed for r in run_group(group))


def verify_detV_product():
    return _group_ok("detV")


def verify_xi_quotients():
    return _group_ok("xi_quotients")


def verify_omega_consistency():
    return _group_ok("omega")


def verify_xi31_expansion():
    return _group_ok("xi31_expansion")


def verify_xi30_expansion():
    return _group_ok("xi30_expansion")


def verify_theta_cyclic():
    return _group_ok("theta_cyclic")


def verify_Csing_simplification():
    return _group_ok("csing")


def verify_system_equivalence():
    suppressed = all(deg <= bound for _, deg, bound in suppression_degrees())
    return suppressed and _group_ok("equivalence")


VERIFIERS = {
    "detV_product": verify_detV_product,
    "xi_quotients": verify_xi_quotients,
    "omega_consistency": verify_omega_consistency,
    "xi31_expansion": verify_xi31_expansion,
    "xi30_expansion": verify_xi30_expansion,
    "theta_cyclic": verify_theta_cyclic,
    "Csing_simplification": verify_Csing_simplification,
    "system_equivalence": verify_system_equivalence,
}
