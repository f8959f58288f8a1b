"""Kernel backend selection.

The hot inner loops (hypergeometric series summation and the radial RK4
sweep) exist twice: compiled Cython in ``_fast`` and plain Python in
``_pure``.  The compiled module is preferred when importable; setting the
environment variable ``HHM_PURE_PYTHON=1`` forces the fallback (useful for
debugging and for the benchmark comparison).
"""

import os

if os.environ.get("HHM_PURE_PYTHON"):
    from . import _pure as _impl
else:
    try:
        from . import _fast as _impl
    except ImportError:
        from . import _pure as _impl

BACKEND = _impl.BACKEND
hyp2f1_neg_z = _impl.hyp2f1_neg_z
radial_rk4 = _impl.radial_rk4


def backend_name():
    """Name of the active kernel backend: 'cython' or 'python'."""
    return BACKEND
