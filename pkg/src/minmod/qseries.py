"""Truncated fractional-power q-series with exact rational coefficients.

A :class:`QSeries` stores

    sum_{n=0}^{trunc-1} coeffs[n] * q**(offset + n/step)  +  O(q**prec)

with ``prec = offset + trunc/step``.  Every operation propagates ``prec`` so a
result is only ever compared inside the window where it is known exactly.
"""
from fractions import Fraction
from math import gcd, lcm
import os

from . import kernels

DEFAULT_TRUNC = int(os.environ.get("MINMOD_TRUNC", 64))


class QSeriesError(ArithmeticError):
    pass


class ZeroLeadingCoefficient(QSeriesError, ZeroDivisionError):
    """Raised when inverting a series that is zero to its truncation."""


class NonUnitLeading(QSeriesError, ValueError):
    """Raised for a non-integer power of a series whose leading coefficient is not 1."""


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _ceil(x):
    return -((-x.numerator) // x.denominator)


def _to_ints(coeffs):
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _is_scalar(x):
    return isinstance(x, (int, Fraction))


class QSeries:
    """Immutable truncated series on the exponent lattice ``offset + Z/step``."""

    __slots__ = ("offset", "step", "coeffs", "trunc")

    def __init__(self, coeffs=(), offset=0, step=1, trunc=None):
        offset = as_fraction(offset)
        step = int(step)
        if step <= 0:
            raise ValueError("step must be a positive integer")
        cs = [as_fraction(c) for c in coeffs]
        if trunc is None:
            trunc = len(cs)
        trunc = int(trunc)
        if trunc < 0:
            raise ValueError("truncation order must be non-negative")
        if len(cs) > trunc:
            del cs[trunc:]
        else:
            cs.extend([Fraction(0)] * (trunc - len(cs)))

        first = next((i for i, c in enumerate(cs) if c), None)
        if first is None:
            self.offset, self.step, self.coeffs, self.trunc = offset, step, (), trunc
            return
        if first:
            offset += Fraction(first, step)
            del cs[:first]
            trunc -= first
        # coarsen only by factors that keep prec exactly representable
        g = gcd(step, trunc)
        for i, c in enumerate(cs):
            if c and i:
                g = gcd(g, i)
                if g == 1:
                    break
        if g > 1:
            trunc //= g
            cs = cs[::g][:trunc]
            step //= g
        self.offset, self.step, self.coeffs, self.trunc = offset, step, tuple(cs), trunc

    # -- construction helpers ---------------------------------------------

    @classmethod
    def zero(cls, prec=0):
        """The series ``O(q**prec)``."""
        return cls((), offset=prec, step=1, trunc=0)

    @classmethod
    def monomial(cls, exponent=0, coeff=1, trunc=DEFAULT_TRUNC, step=1):
        return cls([coeff], offset=exponent, step=step, trunc=trunc)

    @classmethod
    def one(cls, trunc=DEFAULT_TRUNC):
        return cls.monomial(0, 1, trunc)

    @classmethod
    def constant(cls, value, prec):
        """``value + O(q**prec)`` on the integer lattice."""
        prec = as_fraction(prec)
        value = as_fraction(value)
        if prec <= 0 or not value:
            return cls.zero(prec)
        return cls([value], offset=0, step=1, trunc=_ceil(prec))

    # -- basic properties -------------------------------------------------

    @property
    def prec(self):
        """Exponent below which every coefficient is known exactly."""
        return self.offset + Fraction(self.trunc, self.step)

    def is_zero(self):
        return not self.coeffs

    @property
    def valuation(self):
        if self.is_zero():
            raise QSeriesError("zero series has no valuation")
        return self.offset

    @property
    def leading_coefficient(self):
        if self.is_zero():
            raise QSeriesError("zero series has no leading coefficient")
        return self.coeffs[0]

    def exponent(self, n):
        return self.offset + Fraction(n, self.step)

    def items(self):
        """Yield ``(exponent, coefficient)`` for the nonzero retained terms."""
        for n, c in enumerate(self.coeffs):
            if c:
                yield self.exponent(n), c

    def coeff(self, exponent):
        """Coefficient of ``q**exponent``; raises outside the trusted window."""
        e = as_fraction(exponent)
        if e >= self.prec:
            raise QSeriesError(f"q^{e} lies beyond the truncation O(q^{self.prec})")
        if self.is_zero() or e < self.offset:
            return Fraction(0)
        pos = (e - self.offset) * self.step
        if pos.denominator != 1:
            return Fraction(0)
        return self.coeffs[int(pos)]

    def coefficient_list(self, count=None, step=None):
        """Coefficients at ``offset + n/step`` for ``n < count`` (default: own lattice)."""
        step = self.step if step is None else step
        base = self.offset
        count = _ceil((self.prec - base) * step) if count is None else count
        return [self.coeff(base + Fraction(n, step)) for n in range(count)]

    def truncate(self, prec):
        """Drop everything at or above ``q**prec``."""
        prec = as_fraction(prec)
        if prec >= self.prec:
            return self
        if prec <= self.offset:
            return QSeries.zero(prec)
        n = _ceil((prec - self.offset) * self.step)
        return QSeries(self.coeffs[:n], self.offset, self.step, n)

    def shift(self, exponent):
        """Multiply by the exact monomial ``q**exponent``."""
        return QSeries(self.coeffs, self.offset + as_fraction(exponent), self.step, self.trunc)

    # -- arithmetic -------------------------------------------------------

    def _spread(self, base, step, count):
        out = [Fraction(0)] * count
        if self.is_zero():
            return out
        pos = (self.offset - base) * step
        mult = step // self.step
        start = int(pos)
        for n, c in enumerate(self.coeffs):
            i = start + n * mult
            if i >= count:
                break
            out[i] = c
        return out

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if _is_scalar(other):
            return QSeries.constant(other, self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        base = min(self.offset, other.offset)
        step = lcm(self.step, other.step, (self.offset - other.offset).denominator)
        prec = min(self.prec, other.prec)
        count = max(0, _ceil((prec - base) * step))
        a = self._spread(base, step, count)
        b = other._spread(base, step, count)
        return QSeries([x + y for x, y in zip(a, b)], base, step, count)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.offset, self.step, self.trunc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = as_fraction(factor)
        if not factor:
            return QSeries((), self.offset, self.step, self.trunc)
        return QSeries([c * factor for c in self.coeffs], self.offset, self.step, self.trunc)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        offset = self.offset + other.offset
        step = lcm(self.step, other.step)
        low_a = self.prec if self.is_zero() else self.offset
        low_b = other.prec if other.is_zero() else other.offset
        prec = min(low_a + other.prec, low_b + self.prec)
        count = max(0, _ceil((prec - offset) * step))
        if self.is_zero() or other.is_zero():
            return QSeries((), offset, step, count)
        a, da = _to_ints(self._spread(self.offset, step, count))
        b, db = _to_ints(other._spread(other.offset, step, count))
        prod = kernels.cauchy(a, b, count)
        den = da * db
        return QSeries([Fraction(x, den) for x in prod], offset, step, count)

    __rmul__ = __mul__

    def invert(self):
        if self.is_zero():
            raise ZeroLeadingCoefficient(f"series is zero to O(q^{self.prec})")
        ints, den = _to_ints(self.coeffs)
        inv = kernels.series_inverse(ints, self.trunc)
        return QSeries([as_fraction(c) * den for c in inv], -self.offset, self.step, self.trunc)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(1 / as_fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return self.invert().scale(other)
        return NotImplemented

    def pow_rational(self, e):
        e = as_fraction(e)
        if self.is_zero():
            if e.denominator == 1 and e > 0:
                out = self
                for _ in range(int(e) - 1):
                    out = out * self
                return out
            raise ZeroLeadingCoefficient("cannot raise a zero series to a non-positive power")
        lead = self.coeffs[0]
        if e.denominator == 1:
            lead_pow = lead ** int(e)
        elif lead == 1:
            lead_pow = Fraction(1)
        else:
            raise NonUnitLeading(f"leading coefficient {lead} is not 1 for exponent {e}")
        out = kernels.series_power(list(self.coeffs), e, self.trunc, lead_pow)
        return QSeries(out, self.offset * e, self.step, self.trunc)

    def __pow__(self, e):
        return self.pow_rational(e)

    def derive_q(self):
        """``q d/dq``, i.e. ``(1/2 pi i) d/d tau`` on q-expansions."""
        return QSeries(
            [c * self.exponent(n) for n, c in enumerate(self.coeffs)],
            self.offset, self.step, self.trunc,
        )

    # -- comparison / display ---------------------------------------------

    def agrees_with(self, other):
        """True when ``self - other`` vanishes on the common trusted window."""
        return (self - other).is_zero()

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.offset, self.step, self.coeffs, self.trunc) == (
            other.offset, other.step, other.coeffs, other.trunc)

    def __hash__(self):
        return hash((self.offset, self.step, self.coeffs, self.trunc))

    def __repr__(self):
        terms = []
        for e, c in list(self.items())[:8]:
            terms.append(f"{c}*q^({e})")
        more = " + ..." if sum(1 for c in self.coeffs if c) > 8 else ""
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body}{more} + O(q^({self.prec})))"

    def to_dict(self):
        return {
            "offset": str(self.offset),
            "step": self.step,
            "coeffs": [str(c) for c in self.coeffs],
            "trunc": self.trunc,
        }

    @classmethod
    def from_dict(cls, d):
        return cls([as_fraction(c) for c in d["coeffs"]], as_fraction(d["offset"]),
                   int(d["step"]), int(d["trunc"]))


# functional aliases matching the operation names used throughout the package

def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def invert(a):
    return a.invert()


def pow_rational(a, e):
    return a.pow_rational(e)


def derive_q(a):
    return a.derive_q()


def q_pochhammer(n, trunc):
    """``(q)_n = prod_{k=1}^{n} (1 - q^k)`` as a polynomial truncated at ``q**trunc``."""
    g = [0] * trunc
    if trunc:
        g[0] = 1
    for k in range(1, n + 1):
        if k >= trunc:
            break
        kernels.multiply_one_minus(g, k, trunc)
    return QSeries(g, 0, 1, trunc)
