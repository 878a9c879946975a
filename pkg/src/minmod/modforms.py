"""Named modular objects as exact q-series, and the Serre derivative."""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import kernels
from .qseries import DEFAULT_TRUNC, QSeries, as_fraction


class InvalidWeight(ValueError):
    pass


@lru_cache(maxsize=None)
def bernoulli(n):
    """Bernoulli number ``B_n`` with ``B_1 = -1/2``."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, j) * b[j] for j in range(m)) / Fraction(m + 1))
    return b[n]


@lru_cache(maxsize=None)
def eisenstein(k, trunc=DEFAULT_TRUNC):
    """Normalised ``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``."""
    if k < 2 or k % 2:
        raise InvalidWeight(f"Eisenstein series needs an even weight >= 2, got {k}")
    factor = -Fraction(2 * k) / bernoulli(k)
    sig = kernels.divisor_sums(k - 1, trunc)
    coeffs = [Fraction(1)] + [factor * s for s in sig[1:]]
    return QSeries(coeffs, 0, 1, trunc)


def euler_coefficients(trunc):
    """Coefficients of ``(q)_inf`` from the pentagonal number theorem."""
    out = [0] * trunc
    m = 0
    while True:
        hit = False
        for j in ((m * (3 * m - 1)) // 2, (m * (3 * m + 1)) // 2) if m else (0,):
            if j < trunc:
                out[j] = -1 if m % 2 else 1
                hit = True
        if not hit:
            break
        m += 1
    return out


@lru_cache(maxsize=None)
def eta(trunc=DEFAULT_TRUNC):
    """Dedekind eta ``q^(1/24) prod (1 - q^n)``."""
    return QSeries(euler_coefficients(trunc), Fraction(1, 24), 1, trunc)


@lru_cache(maxsize=None)
def delta(trunc=DEFAULT_TRUNC):
    """Discriminant ``eta^24 = q - 24 q^2 + ...``; ``trunc`` counts steps from ``q^1``."""
    poch = QSeries(euler_coefficients(trunc), 0, 1, trunc)
    return (poch ** 24).shift(1)


@lru_cache(maxsize=None)
def jfunction(trunc=DEFAULT_TRUNC):
    """Klein ``j = E4^3 / Delta = q^-1 + 744 + ...``."""
    e4 = eisenstein(4, trunc)
    return (e4 * e4 * e4) / delta(trunc)


@lru_cache(maxsize=None)
def theta5(k, trunc=DEFAULT_TRUNC):
    """Signed level-5 theta series with ``theta5(k) / eta`` a (2,5) character.

    ``theta5(k) = sum_{n in Z} q^((20n + 2k - 1)^2/40) - q^((20n + 11 - 2k)^2/40)``;
    ``theta5(2)/eta`` is the vacuum character, ``theta5(1)/eta`` the other one.
    """
    if k not in (1, 2):
        raise ValueError("theta5 index must be 1 or 2")
    plus, minus = 2 * k - 1, 11 - 2 * k
    base = Fraction(plus * plus, 40)
    coeffs = [0] * trunc
    for sign, a in ((1, plus), (-1, minus)):
        n = 0
        while True:
            placed = False
            for m in {n, -n}:
                e = Fraction((20 * m + a) ** 2, 40) - base
                if e < trunc:
                    coeffs[int(e)] += sign
                    placed = True
            if not placed and n > 0:
                break
            n += 1
    return QSeries(coeffs, base, 1, trunc)


def legendre5(n):
    r = n % 5
    if r == 0:
        return 0
    return 1 if r in (1, 4) else -1


@lru_cache(maxsize=None)
def rcf(trunc=DEFAULT_TRUNC):
    """Rogers-Ramanujan continued fraction as ``q^(1/5) prod (1-q^n)^(n/5)``."""
    g = [0] * trunc
    if trunc:
        g[0] = 1
    for n in range(1, trunc):
        s = legendre5(n)
        if s == 1:
            kernels.multiply_one_minus(g, n, trunc)
        elif s == -1:
            kernels.divide_one_minus(g, n, trunc)
    return QSeries(g, Fraction(1, 5), 1, trunc)


def rcf_continued_fraction(depth, trunc=DEFAULT_TRUNC):
    """Finite continued fraction ``q^(1/5) / (1 + q/(1 + q^2/(... 1 + q^depth)))``."""
    t = QSeries.one(trunc)
    for k in range(depth, 0, -1):
        t = 1 + QSeries.monomial(k, 1, trunc) / t
    return t.invert().shift(Fraction(1, 5))


def _window(f):
    # integer q-steps needed to cover the trusted window of f
    if f.is_zero():
        return 1
    return -(-f.trunc // f.step) + 1


def serre(f, weight):
    """Serre derivative ``q d/dq f - (weight/12) E2 f``."""
    weight = as_fraction(weight)
    df = f.derive_q()
    if not weight:
        return df
    return df - (eisenstein(2, _window(f)) * f).scale(weight / 12)


def serre_tower(f, m):
    """``D^m f``: Serre derivatives of weights 0, 2, ..., 2(m-1) applied in turn."""
    if m < 0:
        raise ValueError("order must be non-negative")
    for ell in range(m):
        f = serre(f, 2 * ell)
    return f


@dataclass(frozen=True)
class FormCatalogEntry:
    name: str
    weight: Fraction
    series: QSeries


_WEIGHTS = {
    "E2": 2, "E4": 4, "E6": 6, "E12": 12, "Delta": 12, "Eta": Fraction(1, 2),
    "Theta51": Fraction(1, 2), "Theta52": Fraction(1, 2), "J": 0, "RCF": 0,
}

FORM_NAMES = tuple(_WEIGHTS)


def form(name, trunc=DEFAULT_TRUNC):
    """Look up a catalog series by name (case-insensitive)."""
    key = {n.lower(): n for n in FORM_NAMES}.get(name.lower())
    if key is None:
        raise KeyError(f"unknown form {name!r}; choose from {', '.join(FORM_NAMES)}")
    builders = {
        "E2": lambda: eisenstein(2, trunc),
        "E4": lambda: eisenstein(4, trunc),
        "E6": lambda: eisenstein(6, trunc),
        "E12": lambda: eisenstein(12, trunc),
        "Delta": lambda: delta(trunc),
        "Eta": lambda: eta(trunc),
        "Theta51": lambda: theta5(1, trunc),
        "Theta52": lambda: theta5(2, trunc),
        "J": lambda: jfunction(trunc),
        "RCF": lambda: rcf(trunc),
    }
    return FormCatalogEntry(key, Fraction(_WEIGHTS[key]), builders[key]())


def catalog(trunc=DEFAULT_TRUNC):
    return {name: form(name, trunc) for name in FORM_NAMES}


def icosahedral_residual(trunc=DEFAULT_TRUNC):
    """``(X^4 - 228X^3 + 494X^2 + 228X + 1)^3 + j X (X^2 + 11X - 1)^5`` with ``X = r^5``."""
    x = rcf(trunc) ** 5
    x2 = x * x
    left = x2 * x2 - x2 * x * 228 + x2 * 494 + x * 228 + 1
    right = jfunction(trunc + 2) * x * (x2 + x * 11 - 1) ** 5
    return left ** 3 + right
