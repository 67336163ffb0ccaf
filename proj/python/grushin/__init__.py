"""Discrete Baouendi-Grushin operators, Lp-Poincare remainder identities,
remainder constants and the doubly nonlinear porous medium equation."""

try:
    # wheel layout: extension installed inside the package
    from ._grushin import *  # noqa: F401,F403
except ImportError:
    # build-tree layout: extension on PYTHONPATH next to the package
    from _grushin import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
