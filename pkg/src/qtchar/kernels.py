"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python twin.
Set QTCHAR_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by the backend-equivalence tests).
"""

import os

if os.environ.get("QTCHAR_PURE_PYTHON") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
mono_mul = _impl.mono_mul
mono_pow = _impl.mono_pow
poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_mul = _impl.poly_mul
poly_scale = _impl.poly_scale
poly_acc_mul = _impl.poly_acc_mul
dot_shifted = _impl.dot_shifted
