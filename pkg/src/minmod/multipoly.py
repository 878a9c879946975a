"""Sparse multivariate polynomials over Q, formal quotients and dual numbers.

Just enough computer algebra for certificate-style identity checks: every
comparison is a full expansion, never a sampled one.
"""
from fractions import Fraction


def _scalar(x):
    return isinstance(x, (int, Fraction))


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


class MultiPoly:
    """Polynomial stored as ``{monomial: coefficient}``, monomial = sorted ``((var, exp), ...)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @staticmethod
    def _lift(x):
        if isinstance(x, MultiPoly):
            return x
        if _scalar(x):
            return MultiPoly.const(x)
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _scalar(other):
            return MultiPoly({m: c * other for m, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if _scalar(other):
            return self * (1 / Fraction(other))
        return Frac(self, 1) / other

    def __rtruediv__(self, other):
        return Frac(other, 1) / Frac(self, 1)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def degree(self, name=None):
        """Total degree, or the degree in one variable."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(name, 0) for m in self.terms)

    def substitute(self, mapping):
        """Replace variables by polynomials or scalars (a ring homomorphism)."""
        out = MultiPoly()
        cache = {}
        for m, c in self.terms.items():
            term = MultiPoly.const(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = MultiPoly._lift(mapping[v]) ** e
                    term = term * cache[key]
                else:
                    term = term * MultiPoly({((v, e),): 1})
            out = out + term
        return out

    def evaluate(self, values):
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= Fraction(values[v]) ** e
            total += t
        return total

    def derive(self, images):
        """Derivation sending each variable ``v`` in ``images`` to ``images[v]``."""
        out = MultiPoly()
        for m, c in self.terms.items():
            for i, (v, e) in enumerate(m):
                if v not in images:
                    continue
                rest = list(m)
                if e == 1:
                    del rest[i]
                else:
                    rest[i] = (v, e - 1)
                out = out + MultiPoly({tuple(rest): c * e}) * images[v]
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            parts.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(parts)


class Frac:
    """Formal quotient ``num/den`` of polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        self.num = MultiPoly._lift(num)
        self.den = MultiPoly._lift(den)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    @staticmethod
    def _lift(x):
        if isinstance(x, Frac):
            return x
        if isinstance(x, MultiPoly) or _scalar(x):
            return Frac(x, 1)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Frac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n):
        return Frac(self.num ** n, self.den ** n)

    def cleared(self, other):
        """``num_a * den_b - num_b * den_a``; zero iff the quotients agree."""
        other = self._lift(other)
        return self.num * other.den - other.num * self.den

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.cleared(other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"({self.num}) / ({self.den})"


class Dual:
    """``a + b eps`` with ``eps^2 = 0``; ``b`` carries a directional derivative."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _lift(x):
        if isinstance(x, Dual):
            return x
        if _scalar(x):
            return Dual(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Dual(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Dual(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Dual(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Dual(self.a / other.a, (self.b * other.a - self.a * other.b) / (other.a * other.a))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n):
        out = Dual(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def __repr__(self):
        return f"Dual({self.a}, {self.b})"
