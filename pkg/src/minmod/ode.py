"""Modular linear differential operators annihilating the (2, nu) characters.

The operator of order ``M`` is

    D = D^M + sum_{m=0}^{M-2} Omega_{2(M-m)} D^m,   Omega_{2k} = alpha_m E_{2k},

with ``D^m`` the Serre tower and, at weight 12, an extra ``alpha_cusp * Delta``.
The ``alpha_m`` follow from matching the indicial polynomial, the cusp
coefficient from one higher-order coefficient of the vacuum character.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from . import modforms
from .characters import ModelSpec, character
from .qseries import DEFAULT_TRUNC, QSeries, QSeriesError


class SingularSystem(ValueError):
    pass


class ConsistencyFailure(ArithmeticError):
    pass


class InsufficientTruncation(QSeriesError):
    pass


# -- polynomials in kappa, low degree first --------------------------------

def poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_from_roots(roots):
    p = [Fraction(1)]
    for r in roots:
        p = poly_mul(p, [-Fraction(r), Fraction(1)])
    return p


def falling_sixths(m):
    """``prod_{l<m} (kappa - l/6)``: the constant-term action of ``D^m`` on ``q^kappa``."""
    return poly_from_roots(Fraction(ell, 6) for ell in range(m))


def poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class IndicialPolynomial:
    coefficients: tuple

    @classmethod
    def from_spec(cls, spec):
        return cls(tuple(poly_from_roots(spec.kappas)))

    @classmethod
    def from_operator(cls, op):
        p = falling_sixths(op.M)
        for m, a in op.alphas.items():
            term = falling_sixths(m)
            for i, c in enumerate(term):
                p[i] += a * c
        return cls(tuple(p))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, kappa):
        return poly_eval(self.coefficients, Fraction(kappa))


def weight_form(k, trunc):
    """Basis form of weight ``2k`` used for ``Omega_{2k}``; E8 and E10 as products."""
    if k == 4:
        e4 = modforms.eisenstein(4, trunc)
        return e4 * e4
    if k == 5:
        return modforms.eisenstein(4, trunc) * modforms.eisenstein(6, trunc)
    return modforms.eisenstein(2 * k, trunc)


@dataclass(frozen=True)
class OdeOperator:
    M: int
    alphas: dict = field(default_factory=dict)
    alpha_cusp: Fraction = None

    def omega(self, m, trunc):
        """Coefficient form multiplying ``D^m``."""
        k = self.M - m
        out = weight_form(k, trunc).scale(self.alphas.get(m, 0))
        if k == 6 and self.alpha_cusp:
            out = out + modforms.delta(trunc).scale(self.alpha_cusp)
        return out

    def to_dict(self):
        d = {
            "M": self.M,
            "alphas": {str(m): str(a) for m, a in sorted(self.alphas.items())},
        }
        if self.alpha_cusp is not None:
            d["alpha_cusp"] = str(self.alpha_cusp)
        return d


def _integer_window(f):
    if f.is_zero():
        return 1
    return -(-f.trunc // f.step) + 1


def apply(op, f, window=None):
    """``D f`` as a series; ``window`` demands that many trusted steps in ``f``."""
    if window is not None:
        have = f.prec - (f.offset if not f.is_zero() else f.prec)
        if have < window:
            raise InsufficientTruncation(
                f"series known for {have} steps, {window} requested")
    tower = [f]
    for ell in range(op.M):
        tower.append(modforms.serre(tower[-1], 2 * ell))
    trunc = _integer_window(f)
    out = tower[op.M]
    for m in range(op.M - 1):
        if op.alphas.get(m) or (op.M - m == 6 and op.alpha_cusp):
            out = out + op.omega(m, trunc) * tower[m]
    return out


def _solve_alphas(kappas, M):
    if len(set(kappas)) != len(kappas):
        raise SingularSystem("character exponents are not distinct")
    rest = poly_from_roots(kappas)
    top = falling_sixths(M)
    rest = [a - b for a, b in zip(rest, top)]
    if M >= 1 and rest[M - 1]:
        raise ConsistencyFailure(
            f"kappa^{M - 1} coefficient mismatch {rest[M - 1]}; D^{M - 1} would be needed")
    alphas = {}
    # triangular solve: falling_sixths(m) is monic of degree m
    for m in range(M - 2, -1, -1):
        a = rest[m]
        alphas[m] = a
        if a:
            for i, c in enumerate(falling_sixths(m)):
                rest[i] -= a * c
    if any(rest):
        raise ConsistencyFailure("residual after solving for the coefficients")
    return alphas


@lru_cache(maxsize=None)
def derive_alphas(spec):
    """Exact coefficients of the order-M operator annihilating every character."""
    if isinstance(spec, int):
        spec = ModelSpec(spec)
    M = spec.M
    if M > 6:
        raise ValueError("operators are only modelled up to order 6 (nu <= 13)")
    alphas = {m: a for m, a in _solve_alphas(spec.kappas, M).items() if a}
    if M < 6:
        return OdeOperator(M, alphas)
    op = OdeOperator(M, alphas, Fraction(0))
    vac = character(spec, 1, 4)
    target = spec.kappa(1) + 1
    # Delta * vacuum starts at q^(kappa_1 + 1) with coefficient 1
    cusp = -apply(op, vac).coeff(target)
    return OdeOperator(M, alphas, cusp)


def e12_rewrite(op):
    """Coefficients ``(u, v)`` with ``Omega_12 = u E4^3 + v E6^2``."""
    a0 = op.alphas.get(0, Fraction(0))
    cusp = op.alpha_cusp or Fraction(0)
    u = Fraction(441, 691) * a0 + cusp / 1728
    v = Fraction(250, 691) * a0 - cusp / 1728
    return u, v


def second_order_residual(f):
    """``D^2 f - (11/3600) E4 f`` for the (2,5) equation."""
    e4 = modforms.eisenstein(4, _integer_window(f))
    return modforms.serre_tower(f, 2) - (e4 * f).scale(Fraction(11, 3600))


def second_order_check_25(trunc=DEFAULT_TRUNC):
    """Both (2,5) characters solve the second-order equation, matching ``derive_alphas(5)``."""
    op = derive_alphas(5)
    if op.alphas != {0: Fraction(-11, 3600)}:
        return False
    for s in (1, 2):
        f = character(5, s, trunc)
        if not second_order_residual(f).is_zero():
            return False
        if not apply(op, f).is_zero():
            return False
    return True


def _det(rows, cols):
    """Determinant of a square matrix of series by expansion over column subsets."""
    n = len(rows)
    memo = {}

    def minor(k, avail):
        # rows[k:] against the columns in ``avail``
        if k == n:
            return None
        key = (k, avail)
        if key in memo:
            return memo[key]
        total = None
        sign = 1
        for c in avail:
            rest = tuple(x for x in avail if x != c)
            sub = minor(k + 1, rest)
            term = rows[k][c] if sub is None else rows[k][c] * sub
            if sign < 0:
                term = -term
            total = term if total is None else total + term
            sign = -sign
        memo[key] = total
        return total

    return minor(0, tuple(cols))


def wronskian_ode(solutions):
    """Cofactors ``w_0..w_M`` of the bordered Wronskian; ``sum w_i D^i f_j = 0``."""
    M = len(solutions)
    if M == 0:
        raise ValueError("need at least one solution")
    for f in solutions:
        if f.is_zero() or f.trunc < M + 1:
            raise InsufficientTruncation("each solution needs more than M retained steps")
    rows = []
    for f in solutions:
        row = [f]
        for ell in range(M):
            row.append(modforms.serre(row[-1], 2 * ell))
        rows.append(row)
    out = []
    for i in range(M + 1):
        d = _det(rows, [c for c in range(M + 1) if c != i])
        out.append(d if i % 2 == 0 else -d)
    return out


def rational_sqrt(x):
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(n, d)


def quadratic_roots(b, c):
    """Rational roots of ``t^2 + b t + c`` in increasing order."""
    disc = rational_sqrt(Fraction(b) ** 2 - 4 * Fraction(c))
    return ((-b - disc) / 2, (-b + disc) / 2)


def boundary_exponents_25(c=Fraction(-22, 5)):
    """Exponents ``alpha`` of ``f ~ (X1 - X2)^alpha`` near a degenerate torus.

    The local system gives ``24 alpha (alpha - 1/3) = -c/15``; the shift 1/3 is
    ``c/24 - (c - 8)/24`` between the two connection terms.
    """
    shift = Fraction(c) / 24 - (Fraction(c) - 8) / 24
    return quadratic_roots(-shift, (Fraction(c) / 15) / 24)


F = Fraction
# Nonzero coefficients keyed by nu, then by the drop j in alpha_{M-j}; "cusp" and
# "kappa_M" alongside.  Entries kept in the factored form they are usually quoted in.
REFERENCE_TABLE = {
    3: {"kappa_M": F(0)},
    5: {"kappa_M": F(-1, 60), 2: F(-11, 60 ** 2)},
    7: {"kappa_M": F(-1, 42), 2: F(-5 * 7, 42 ** 2), 3: F(5 * 17, 42 ** 3)},
    9: {"kappa_M": F(-1, 36), 2: F(-2 * 3 * 13, 36 ** 2), 3: F(2 ** 3 * 53, 36 ** 3),
        4: F(-3 * 11 * 23, 36 ** 4)},
    11: {"kappa_M": F(-1, 33), 2: F(-11 * 53, 2 ** 2 * 33 ** 2),
         3: F(3 * 5 * 11 * 59, 2 ** 3 * 33 ** 3), 4: F(-11 * 6151, 2 ** 4 * 33 ** 4),
         5: F(2 ** 4 * 17 * 29, 33 ** 5)},
    13: {"kappa_M": F(-5, 156), 2: F(-7 * 13 * 67, 156 ** 2),
         3: F(2 ** 3 * 13 * 17 * 193, 156 ** 3), 4: F(-5 * 11 * 13 * 89 * 127, 156 ** 4),
         5: F(2 ** 3 * 3 * 5 * 13 * 31 * 2437, 156 ** 5),
         6: F(-5 ** 4 * 7 ** 2 * 23 * 31 * 67, 156 ** 6),
         "cusp": F(5 ** 2 * 7 * 11 * 23 ** 2 * 167, 2 ** 5 * 3 ** 2 * 13 ** 4 * 691)},
}

# Omega_12 = E12_PREFACTOR * (E4_WEIGHT E4^3 + E6_WEIGHT E6^2) for nu = 13
E12_PREFACTOR = F(-5 ** 2 * 7 * 23, 2 ** 7 * 3 ** 5 * 13 ** 6)
E12_WEIGHTS = (F(53 * 1069, 2 ** 5), F(6047, 3))


def compare_with_table(nu):
    """Mismatches between the derived operator and ``REFERENCE_TABLE[nu]`` (empty when equal)."""
    spec = ModelSpec(nu)
    op = derive_alphas(spec)
    row = REFERENCE_TABLE[nu]
    bad = []
    if spec.kappa(spec.M) != row["kappa_M"]:
        bad.append(("kappa_M", spec.kappa(spec.M), row["kappa_M"]))
    expected = {op.M - j: v for j, v in row.items() if isinstance(j, int)}
    if op.alphas != expected:
        bad.append(("alphas", op.alphas, expected))
    if (op.alpha_cusp or F(0)) != row.get("cusp", F(0)):
        bad.append(("cusp", op.alpha_cusp, row.get("cusp")))
    return bad
