"""Finite-gap and Cantor-type sets: potential theory, spectral measures,
Jacobi recurrence coefficients and asymptotic diagnostics.

The compiled module is packaged next to this file in installed wheels and
sits on the import path directly in development builds; support both.
"""

try:
    from ._finitegap import *  # noqa: F401,F403
    from . import _finitegap as _impl
except ImportError:  # development layout: extension on PYTHONPATH
    from _finitegap import *  # noqa: F401,F403
    import _finitegap as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "1.0.0"
