"""Kernel backend selection.

The compiled ``_cfast`` extension is used when it was built; otherwise, or
when ``VARFUN_PURE_PYTHON`` is set to a non-empty value, the pure-Python
``_pyfast`` module is used.  Both expose the same two functions.
"""
import os

from . import _pyfast

BACKEND = "python"
_impl = _pyfast
if not os.environ.get("VARFUN_PURE_PYTHON"):
    try:
        from . import _cfast as _impl

        BACKEND = "cython"
    except ImportError:
        pass

pair_violation = _impl.pair_violation
substitution_violation = _impl.substitution_violation

PREASSOCIATIVE = _pyfast.PREASSOCIATIVE
B_PREASSOCIATIVE = _pyfast.B_PREASSOCIATIVE
DEFINETTI = _pyfast.DEFINETTI
