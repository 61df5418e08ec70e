"""Backend selection for the tableau kernels.

The compiled extension is used when it was built; otherwise, or when
``INVMILP_PURE_PYTHON`` is set to a non-empty value, the pure-Python
fallback is used. Both expose ``pivot`` and ``ratio_test``.
"""

import os

from . import _pivot_py

if os.environ.get("INVMILP_PURE_PYTHON"):
    _impl = _pivot_py
    BACKEND = "python"
else:
    try:
        from . import _pivot as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _pivot_py
        BACKEND = "python"

pivot = _impl.pivot
ratio_test = _impl.ratio_test

__all__ = ["BACKEND", "pivot", "ratio_test", "python_kernels"]

python_kernels = _pivot_py
