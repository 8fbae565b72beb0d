"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ``SUPERZENO_PURE=1``
to force the numpy fallback.
"""
import os

from superzeno import _purekernels

if os.environ.get("SUPERZENO_PURE", "") == "1":
    _impl = _purekernels
    BACKEND = "python"
else:
    try:
        from superzeno import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _purekernels
        BACKEND = "python"

sequence_series = _impl.sequence_series
pulsed_product = _impl.pulsed_product

__all__ = ["BACKEND", "sequence_series", "pulsed_product"]
