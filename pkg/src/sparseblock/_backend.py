"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``SPARSEBLOCK_PURE_PYTHON=1`` to force the fallback.  Words longer
than the compiled buffer size are always routed to the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels
COMPILED_MAX_LENGTH = 64

if os.environ.get("SPARSEBLOCK_PURE_PYTHON", "").lower() not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"


def tree_walk_orbits(p, irreducible_only=False):
    return kernels.tree_walk_orbits(p, irreducible_only)


def planar_count(w):
    if len(w) > COMPILED_MAX_LENGTH:
        return _pykernels.planar_count(w)
    return kernels.planar_count(w)


def wick_loop_counts(w):
    if len(w) > COMPILED_MAX_LENGTH:
        return _pykernels.wick_loop_counts(w)
    return kernels.wick_loop_counts(w)
