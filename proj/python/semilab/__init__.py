"""Graph-algebra representations, point derivations, and characters.

Thin wrapper over the compiled extension. Objects constructed from a graph
(polynomials, representations, characters) reference it; keep the graph
object alive while you use them.
"""

try:
    from ._semilab import *  # noqa: F401,F403
    from . import _semilab as _core
except ImportError:  # built in-tree: extension next to the package directory
    from _semilab import *  # noqa: F401,F403
    import _semilab as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"
