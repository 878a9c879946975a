"""Pure-Python reference kernels.

These mirror ``_ckernels.pyx`` function for function and are used whenever the
compiled module is unavailable (or ``MINMOD_PURE=1`` is set).  Coefficient
lists hold arbitrary Python numbers (``int`` or ``Fraction``); every routine
works over whatever ring the inputs live in.
"""
from fractions import Fraction

import numpy as np


def cauchy(a, b, n):
    """First ``n`` coefficients of the product of two power series."""
    out = [0] * n
    la = min(len(a), n)
    lb = min(len(b), n)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def series_inverse(a, n):
    """First ``n`` coefficients of ``1/a``; ``a[0]`` must be invertible."""
    if n <= 0:
        return []
    a0 = a[0]
    inv0 = a0 if a0 in (1, -1) else 1 / Fraction(a0)
    out = [inv0]
    la = len(a)
    for k in range(1, n):
        s = 0
        for i in range(1, min(k, la - 1) + 1):
            ai = a[i]
            if ai:
                s += ai * out[k - i]
        out.append(-s * inv0)
    return out


def series_power(a, e, n, lead):
    """First ``n`` coefficients of ``a**e`` given ``lead == a[0]**e``.

    Uses the J.C.P. Miller recurrence, so ``e`` may be any rational.
    """
    if n <= 0:
        return []
    a0 = a[0]
    out = [lead]
    la = len(a)
    for k in range(1, n):
        s = 0
        for i in range(1, min(k, la - 1) + 1):
            ai = a[i]
            if ai:
                s += ((e + 1) * i - k) * ai * out[k - i]
        out.append(Fraction(s) / (k * a0))
    return out


def divide_one_minus(g, stride, n):
    """Multiply ``g`` in place by ``1/(1 - q**stride)`` to ``n`` terms."""
    for i in range(stride, n):
        g[i] += g[i - stride]
    return g


def multiply_one_minus(g, stride, n):
    """Multiply ``g`` in place by ``(1 - q**stride)`` to ``n`` terms."""
    for i in range(n - 1, stride - 1, -1):
        g[i] -= g[i - stride]
    return g


def divisor_sums(k, n):
    """``[sigma_k(0), sigma_k(1), ..., sigma_k(n-1)]`` with ``sigma_k(0) = 0``."""
    out = [0] * n
    for d in range(1, n):
        p = d ** k
        for m in range(d, n, d):
            out[m] += p
    return out


def horner(coeffs, q):
    """Evaluate ``sum coeffs[i] * q**i`` for complex ``q``."""
    c = np.asarray(coeffs, dtype=complex)
    acc = 0j
    for v in c[::-1]:
        acc = acc * q + v
    return acc
