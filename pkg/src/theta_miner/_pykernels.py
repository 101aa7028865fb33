"""Pure-Python kernels. Same signatures as the compiled ``_ckernels`` module."""

from collections import deque

BACKEND = "python"


def bfs_distances(indptr, indices, source, allowed=None):
    """Hop distances from ``source``; -1 marks unreachable or disallowed vertices.

    ``allowed`` is an optional byte mask; disallowed vertices are never entered.
    """
    n = len(indptr) - 1
    dist = [-1] * n
    if allowed is not None and not allowed[source]:
        return dist
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            if dist[u] < 0 and (allowed is None or allowed[u]):
                dist[u] = dv
                queue.append(u)
    return dist


def _connected(mask, nbr):
    low = mask & -mask
    reach = low
    frontier = low
    while frontier:
        grow = 0
        f = frontier
        while f:
            b = f & -f
            grow |= nbr[b.bit_length() - 1]
            f ^= b
        grow &= mask & ~reach
        reach |= grow
        frontier = grow
    return reach == mask


def _bits(mask):
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def _internal(mask, mult):
    vs = _bits(mask)
    total = 0
    for i, v in enumerate(vs):
        row = mult[v]
        for u in vs[i + 1:]:
            total += row[u]
    return total


def _cross(amask, bmask, mult):
    bs = _bits(bmask)
    total = 0
    for v in _bits(amask):
        row = mult[v]
        for u in bs:
            total += row[u]
    return total


def theta_search(n, nbr, mult, r, limit):
    """Smallest pair of disjoint connected vertex sets joined by >= r edge records.

    Returns ``(edges, a_mask, b_mask)`` where ``edges = |A| + |B| - 2 + r``, or
    ``(-1, 0, 0)`` when no such pair exists with ``edges <= limit`` (``limit < 0``
    means unbounded). Candidate unions are enumerated by size, so the first hit
    is a minimum.
    """
    nbr = list(nbr)
    mult = [list(row) for row in mult]
    level = [1 << v for v in range(n)]
    seen = set(level)
    for size in range(2, n + 1):
        if limit >= 0 and size - 2 + r > limit:
            break
        nxt = []
        for mask in level:
            ext = 0
            m = mask
            while m:
                b = m & -m
                ext |= nbr[b.bit_length() - 1]
                m ^= b
            ext &= ~mask
            while ext:
                b = ext & -ext
                ext ^= b
                grown = mask | b
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        nxt.sort()
        level = nxt
        if not level:
            break
        need = size - 2 + r
        for union in level:
            if _internal(union, mult) < need:
                continue
            low = union & -union
            rest = union ^ low
            sub = rest
            while True:
                sub = (sub - 1) & rest
                a = low | sub
                b = union ^ a
                if _cross(a, b, mult) >= r and _connected(a, nbr) and _connected(b, nbr):
                    return need, a, b
                if sub == 0:
                    break
    return -1, 0, 0
