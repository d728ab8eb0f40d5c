"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``HOROTILE_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("HOROTILE_PURE_PYTHON") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
orbit_tri = _impl.orbit_tri
orbit_pent = _impl.orbit_pent
walk_reduced_words = _impl.walk_reduced_words
