"""Backend selection for the inner-loop kernels.

The compiled module is preferred; set ``MINMOD_PURE=1`` to force the
pure-Python implementation (used by the benchmark and the parity tests).
"""
import os

from . import _kernels_py

if os.environ.get("MINMOD_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

cauchy = _impl.cauchy
series_inverse = _impl.series_inverse
series_power = _impl.series_power
divide_one_minus = _impl.divide_one_minus
multiply_one_minus = _impl.multiply_one_minus
divisor_sums = _impl.divisor_sums
horner = _impl.horner

__all__ = [
    "BACKEND",
    "cauchy",
    "series_inverse",
    "series_power",
    "divide_one_minus",
    "multiply_one_minus",
    "divisor_sums",
    "horner",
]
