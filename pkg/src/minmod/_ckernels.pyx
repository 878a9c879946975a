# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see ``_kernels_py`` for the reference semantics."""
from fractions import Fraction


def cauchy(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t i, j, la, lb, top
    cdef list out = [0] * n
    cdef object ai, bj
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
                out[i + j] = out[i + j] + ai * bj
    return out


def series_inverse(list a, Py_ssize_t n):
    cdef Py_ssize_t k, i, la, top
    cdef object s, ai, a0, inv0
    if n <= 0:
        return []
    a0 = a[0]
    inv0 = a0 if a0 in (1, -1) else 1 / Fraction(a0)
    cdef list out = [inv0]
    la = len(a)
    for k in range(1, n):
        s = 0
        top = min(k, la - 1)
        for i in range(1, top + 1):
            ai = a[i]
            if ai:
                s = s + ai * out[k - i]
        out.append(-s * inv0)
    return out


def series_power(list a, e, Py_ssize_t n, lead):
    cdef Py_ssize_t k, i, la, top
    cdef object s, ai, a0
    if n <= 0:
        return []
    a0 = a[0]
    cdef list out = [lead]
    la = len(a)
    for k in range(1, n):
        s = 0
        top = min(k, la - 1)
        for i in range(1, top + 1):
            ai = a[i]
            if ai:
                s = s + ((e + 1) * i - k) * ai * out[k - i]
        out.append(Fraction(s) / (k * a0))
    return out


def divide_one_minus(list g, Py_ssize_t stride, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(stride, n):
        g[i] = g[i] + g[i - stride]
    return g


def multiply_one_minus(list g, Py_ssize_t stride, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(n - 1, stride - 1, -1):
        g[i] = g[i] - g[i - stride]
    return g


def divisor_sums(int k, Py_ssize_t n):
    cdef Py_ssize_t d, m
    cdef list out = [0] * n
    cdef object p
    for d in range(1, n):
        # Python-int power: a C power would round through double
        p = (<object>d) ** k
        for m in range(d, n, d):
            out[m] = out[m] + p
    return out


def horner(coeffs, double complex q):
    cdef double complex[:] c
    cdef double complex acc = 0
    cdef Py_ssize_t i
    import numpy as np
    c = np.ascontiguousarray(coeffs, dtype=complex)
    for i in range(c.shape[0] - 1, -1, -1):
        acc = acc * q + c[i]
    return complex(acc)
