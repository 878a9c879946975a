"""Reduction of the (2,5) second-order equation to Gauss hypergeometric form.

With branch points at 0, 1 and z, ``g(z) = z(z - 1)`` and the abbreviations
``u = g'/g``, ``v = 1/g`` (so ``u' = 2v - u^2`` and ``v' = -u v``), the
equation for the rescaled zero-point function reads

    L = d^2 - (4/5) u d - (7c/40) u^2 + (13c/40) v.

Conjugating by a power of ``g`` removes the double poles ``u^2`` exactly for
two exponents ``k``; what is left is hypergeometric.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .multipoly import MultiPoly
from .ode import quadratic_roots

C_25 = Fraction(-22, 5)


class InvalidK(ValueError):
    pass


class DegenerateParameters(ValueError):
    pass


def allowed_k(c=C_25):
    """Roots of ``k^2 + (9/5) k - 7c/40``, returned as ``(-7/10, -11/10)`` for c = -22/5."""
    lo, hi = quadratic_roots(Fraction(9, 5), -Fraction(7, 40) * c)
    return hi, lo


@dataclass(frozen=True)
class HypergeomParams:
    A: Fraction
    B: Fraction
    C: Fraction
    k: Fraction

    def relations(self, c=C_25):
        return {
            "A+B=2C-1": self.A + self.B == 2 * self.C - 1,
            "AB=13c/40-2k": self.A * self.B == Fraction(13, 40) * c - 2 * self.k,
            "C=-(4/5+2k)": self.C == -(Fraction(4, 5) + 2 * self.k),
        }

    def consistent(self, c=C_25):
        return all(self.relations(c).values())

    def exponents_at_zero(self):
        return (Fraction(0), 1 - self.C)

    def at_one(self):
        """Parameters of the equation in ``t = 1 - z``."""
        return HypergeomParams(self.A, self.B, self.A + self.B + 1 - self.C, self.k)


def params_for_k(k, c=C_25):
    """Read ``(A, B, C)`` off the reduced operator for an allowed ``k``."""
    k = Fraction(k)
    if k not in allowed_k(c):
        raise InvalidK(f"k = {k} leaves double poles; allowed: {', '.join(map(str, allowed_k(c)))}")
    C = -(Fraction(4, 5) + 2 * k)
    total = 2 * C - 1
    product = Fraction(13, 40) * c - 2 * k
    A, B = quadratic_roots(-total, product)
    return HypergeomParams(A, B, C, k)


def gauge_exponent(k, c=C_25):
    """Exponent ``e`` with ``w_k = [z(z - 1)]^e <1>``: ``-c/8`` from the connection plus ``k``."""
    return -Fraction(c) / 8 + Fraction(k)


@dataclass(frozen=True)
class SeriesSolution:
    exponent_at_0: Fraction
    coefficients: tuple
    params: HypergeomParams


def _f21(A, B, C, trunc):
    out = [Fraction(1)]
    for n in range(trunc - 1):
        out.append(out[-1] * (A + n) * (B + n) / ((C + n) * (1 + n)))
    return out


def _is_nonpositive_int(x):
    return x.denominator == 1 and x <= 0


def f21_series(p, trunc=40, second=False):
    """Local solution about ``z = 0``: exponent 0, or ``1 - C`` when ``second`` is set."""
    if not second:
        if _is_nonpositive_int(p.C):
            raise DegenerateParameters(f"C = {p.C} is a non-positive integer")
        return SeriesSolution(Fraction(0), tuple(_f21(p.A, p.B, p.C, trunc)), p)
    if _is_nonpositive_int(2 - p.C) or p.C == 1:
        raise DegenerateParameters(f"second solution needs a logarithm for C = {p.C}")
    coeffs = _f21(p.A - p.C + 1, p.B - p.C + 1, 2 - p.C, trunc)
    return SeriesSolution(1 - p.C, tuple(coeffs), p)


def substitution_residual(sol, p=None):
    """Coefficients of ``z * [z(1-z) w'' + (C - (A+B+1) z) w' - AB w]`` inside the window.

    With ``theta = z d/dz`` this is ``(1-z) theta(theta-1) w + (C - (A+B+1) z) theta w - AB z w``;
    the coefficient of ``z^(rho+n)`` is returned for ``0 <= n < len(coefficients)``.
    """
    p = p or sol.params
    rho = sol.exponent_at_0
    a = sol.coefficients
    out = []
    for n in range(len(a)):
        e = rho + n
        cur = (e * (e - 1) + p.C * e) * a[n]
        prev = Fraction(0)
        if n:
            e1 = e - 1
            prev = (e1 * (e1 - 1) + (p.A + p.B + 1) * e1 + p.A * p.B) * a[n - 1]
        out.append(cur - prev)
    return out


def z1_symmetry_check(p):
    """``z -> 1 - z`` maps the equation to the one with ``C' = A + B + 1 - C``."""
    t = MultiPoly.var("t")
    z = 1 - t
    p2 = z * (1 - z)
    # d/dz = -d/dt
    p1 = -(p.C - (p.A + p.B + 1) * z)
    q = p.at_one()
    return (p2 == t * (1 - t)) and (p1 == q.C - (q.A + q.B + 1) * t)


# -- the gauge computation in the differential ring Q[u, v, k, c] -------------

_U, _V = MultiPoly.var("u"), MultiPoly.var("v")
_IMAGES = {"u": 2 * _V - _U * _U, "v": -(_U * _V)}


def _d(f):
    return f.derive(_IMAGES)


def _nth(f, n):
    for _ in range(n):
        f = _d(f)
    return f


def compose(a, b):
    """Composition of operators given as coefficient lists ``[c0, c1, c2, ...]`` of ``d^i``."""
    out = [MultiPoly() for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            for l in range(i + 1):
                term = ai * _nth(bj, l) * comb(i, l)
                out[i - l + j] = out[i - l + j] + term
    return out


def base_operator(c):
    """``d^2 - (4/5) u d - (7c/40) u^2 + (13c/40) v``."""
    return [-(c * Fraction(7, 40)) * _U * _U + (c * Fraction(13, 40)) * _V,
            _U * Fraction(-4, 5), MultiPoly.const(1)]


def conjugate(op, k):
    """``g^k L g^(-k)``: every ``d`` becomes ``d - k u``."""
    shifted = [-(k * _U), MultiPoly.const(1)]
    out = [MultiPoly()]
    power = [MultiPoly.const(1)]
    for i, coeff in enumerate(op):
        if i:
            power = compose(power, shifted)
        term = [coeff * p for p in power]
        while len(out) < len(term):
            out.append(MultiPoly())
        out = [x + y for x, y in zip(out, term + [MultiPoly()] * (len(out) - len(term)))]
    return out


def split_poles(coeff0):
    """Coefficients of ``u^2`` (double poles) and ``v`` in a zeroth-order term."""
    u2 = MultiPoly({tuple((n, e) for n, e in m if n not in ("u", "v")): c
                    for m, c in coeff0.terms.items() if dict(m).get("u") == 2 and "v" not in dict(m)})
    v1 = MultiPoly({tuple((n, e) for n, e in m if n not in ("u", "v")): c
                    for m, c in coeff0.terms.items() if dict(m).get("v") == 1 and "u" not in dict(m)})
    rest = coeff0 - u2 * _U * _U - v1 * _V
    return u2, v1, rest


def gauge_ode_check(k=None, c=None):
    """Conjugate the base operator and report the double-pole condition.

    With ``k`` and ``c`` left symbolic this reproduces the quadratic, the
    first-order coefficient and the simple-pole coefficient.  With numbers it
    reports whether the double poles cancel (i.e. the result is hypergeometric).
    """
    ks = MultiPoly.var("k") if k is None else Fraction(k)
    cs = MultiPoly.var("c") if c is None else Fraction(c)
    op = conjugate(base_operator(cs), ks)
    u2, v1, rest = split_poles(op[0])
    expected_u2 = ks * ks + ks * Fraction(9, 5) - cs * Fraction(7, 40)
    expected_first = -(Fraction(4, 5) + 2 * ks) * _U
    expected_v = cs * Fraction(13, 40) - 2 * ks
    return {
        "double_pole": u2,
        "simple_pole": v1,
        "first_order": op[1],
        "quadratic_matches": (u2 - expected_u2).is_zero(),
        "first_order_matches": (op[1] - expected_first).is_zero(),
        "simple_pole_matches": (v1 - expected_v).is_zero() and rest.is_zero(),
        "leading_is_one": (op[2] - 1).is_zero(),
        "hypergeometric": u2.is_zero(),
    }


def run_reduction(trunc=40, c=C_25):
    """Everything the reduction asserts, as a flat dict of booleans."""
    ks = allowed_k(c)
    out = {"allowed_k": ks == (Fraction(-7, 10), Fraction(-11, 10))}
    sym = gauge_ode_check()
    out["gauge_symbolic"] = all(sym[key] for key in
                                ("quadratic_matches", "first_order_matches",
                                 "simple_pole_matches", "leading_is_one"))
    for k in ks:
        p = params_for_k(k, c)
        tag = f"k={k}"
        out[f"{tag}:relations"] = p.consistent(c)
        out[f"{tag}:hypergeometric"] = gauge_ode_check(k, c)["hypergeometric"]
        for second in (False, True):
            for q in (p, p.at_one()):
                sol = f21_series(q, trunc, second)
                where = "z=1" if q is not p else "z=0"
                out[f"{tag}:{where}:sol{2 if second else 1}"] = not any(substitution_residual(sol))
        out[f"{tag}:z1_symmetry"] = z1_symmetry_check(p)
    return out
