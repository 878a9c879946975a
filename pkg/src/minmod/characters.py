"""Characters of the (2, nu) Virasoro minimal models.

Character ``s`` (``1 <= s <= M``) has leading exponent
``kappa_s = (nu - 2s)^2 / (8 nu) - 1/24``; ``s = 1`` is the vacuum.  Two
independent constructions are provided: the fermionic nested sum over the
tadpole quadratic form and the Andrews-Gordon product.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import kernels
from .qseries import DEFAULT_TRUNC, QSeries


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class TadpoleForm:
    """Tadpole Cartan matrix of rank ``r``, its inverse and the linear terms."""

    size: int
    cartan: tuple
    A: tuple
    B: tuple

    @classmethod
    def build(cls, r):
        cartan = tuple(
            tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r))
            for i in range(r)
        )
        if r:
            rows = [list(row) for row in cartan]
            rows[-1][-1] = 1
            cartan = tuple(tuple(row) for row in rows)
        # the inverse is min(i, j) with 1-based indices
        A = tuple(tuple(Fraction(min(i, j) + 1) for j in range(r)) for i in range(r))
        M = r + 1
        B = tuple(tuple(max(0, j - s + 1) for j in range(1, r + 1)) for s in range(1, M + 1))
        return cls(r, cartan, A, B)

    def cartan_times_inverse(self):
        r = self.size
        return [[sum(self.cartan[i][k] * self.A[k][j] for k in range(r)) for j in range(r)]
                for i in range(r)]

    def quadratic(self, n, s):
        """``n^T A n + B^(s) . n`` evaluated exactly."""
        r = self.size
        quad = sum(self.A[i][j] * n[i] * n[j] for i in range(r) for j in range(r))
        return quad + sum(b * x for b, x in zip(self.B[s - 1], n))


@dataclass(frozen=True)
class ModelSpec:
    nu: int

    def __post_init__(self):
        if self.nu < 3 or self.nu % 2 == 0:
            raise ValueError(f"nu must be an odd integer >= 3, got {self.nu}")

    @property
    def M(self):
        return (self.nu - 1) // 2

    @property
    def r(self):
        return (self.nu - 3) // 2

    @property
    def central_charge(self):
        return 1 - Fraction(3 * (self.nu - 2) ** 2, self.nu)

    def kappa(self, s):
        self.check_index(s)
        return Fraction((self.nu - 2 * s) ** 2, 8 * self.nu) - Fraction(1, 24)

    @property
    def kappas(self):
        return [self.kappa(s) for s in range(1, self.M + 1)]

    @cached_property
    def tadpole(self):
        return TadpoleForm.build(self.r)

    def check_index(self, s):
        if not 1 <= s <= self.M:
            raise IndexOutOfRange(f"character index {s} outside 1..{self.M} for nu={self.nu}")


@lru_cache(maxsize=None)
def _inverse_pochhammer(n, trunc):
    g = [0] * trunc
    if trunc:
        g[0] = 1
    for k in range(1, n + 1):
        if k >= trunc:
            break
        kernels.divide_one_minus(g, k, trunc)
    return tuple(g)


def _sum_coefficients(r, s, trunc):
    """Integer coefficients of ``sum_n q^(n^T A n + B.n) / prod (q)_{n_i}``.

    With ``N_j = n_j + ... + n_r`` the exponent is ``sum N_j^2 + sum_{j >= s} N_j``,
    so the search runs over ``N_1 >= ... >= N_r >= 0`` from the last index up.
    """
    total = [0] * trunc
    if r == 0:
        if trunc:
            total[0] = 1
        return total

    def visit(j, above, weight, poly):
        # choose N_j >= above (N_{j+1}); j counts down from r to 1
        N = above
        while True:
            w = weight + N * N + (N if j >= s else 0)
            # every remaining N_i (i < j) is at least N
            if w + (j - 1) * N * N >= trunc:
                return
            room = trunc - w
            inv = _inverse_pochhammer(N - above, room)
            part = kernels.cauchy(list(poly[:room]), list(inv), room)
            if j == 1:
                for i, c in enumerate(part):
                    if c:
                        total[w + i] += c
            else:
                visit(j - 1, N, w, part)
            N += 1

    visit(r, 0, 0, [1] + [0] * (trunc - 1))
    return total


@lru_cache(maxsize=None)
def character_sum(spec, s, trunc=DEFAULT_TRUNC):
    """Character ``s`` from the nested fermionic sum."""
    if isinstance(spec, int):
        spec = ModelSpec(spec)
    spec.check_index(s)
    return QSeries(_sum_coefficients(spec.r, s, trunc), spec.kappa(s), 1, trunc)


@lru_cache(maxsize=None)
def character_product(spec, s, trunc=DEFAULT_TRUNC):
    """Character ``s`` as ``q^kappa_s prod_{n != 0, +-s mod nu} (1 - q^n)^-1``."""
    if isinstance(spec, int):
        spec = ModelSpec(spec)
    spec.check_index(s)
    nu = spec.nu
    g = [0] * trunc
    if trunc:
        g[0] = 1
    for n in range(1, trunc):
        if n % nu not in (0, s, nu - s):
            kernels.divide_one_minus(g, n, trunc)
    return QSeries(g, spec.kappa(s), 1, trunc)


def character(spec, s, trunc=DEFAULT_TRUNC):
    return character_product(spec, s, trunc)


def vacuum_dimension_table(spec, hmax):
    """``dim F(h)`` for ``h = 0..hmax``: coefficients of the normalised vacuum character."""
    if isinstance(spec, int):
        spec = ModelSpec(spec)
    vac = character_product(spec, 1, hmax + 1)
    return [int(vac.coeff(vac.offset + h)) for h in range(hmax + 1)]
