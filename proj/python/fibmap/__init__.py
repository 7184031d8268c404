"""Dynamics of the plane endomorphism family f_c(x, y) = (x*y + c, x).

Thin python surface over the C++ core: escape classification, fixed-point
and cycle analysis, rectangle-transition certification, invariant-manifold
tracing, Monte Carlo measure estimation and rendering.
"""

try:
    from ._fibmap import *  # noqa: F401,F403  (installed package layout)
    from . import _fibmap as _impl
except ImportError:  # in-tree build: extension on PYTHONPATH next to the package
    from _fibmap import *  # noqa: F401,F403
    import _fibmap as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
