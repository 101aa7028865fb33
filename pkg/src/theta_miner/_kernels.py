"""Kernel backend selection.

The compiled extension is used when it imports; ``THETA_MINER_PURE=1`` forces
the pure-Python kernels. Both expose ``bfs_distances`` and ``theta_search``.
"""

import os

from . import _pykernels

if os.environ.get("THETA_MINER_PURE"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
bfs_distances = _impl.bfs_distances
theta_search = _impl.theta_search

# compiled theta_search works on 64-bit masks
COMPILED_MAX_N = 64


def theta_search_any(n, nbr, mult, r, limit):
    if _impl is not _pykernels and n > COMPILED_MAX_N:
        return _pykernels.theta_search(n, nbr, mult, r, limit)
    return theta_search(n, nbr, mult, r, limit)


def bfs(g, source, allowed=None):
    """BFS distances in ``g`` from ``source`` (list, -1 = unreached)."""
    if _impl is _pykernels:
        indptr, indices = g.csr_lists()
    else:
        indptr, indices = g.csr_arrays()
    return bfs_distances(indptr, indices, source, allowed)
