# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: BFS distances and the bitmask theta-pair search."""

import numpy as np

from libc.stdint cimport int32_t, uint64_t

BACKEND = "cython"


def bfs_distances(const int32_t[::1] indptr, const int32_t[::1] indices,
                  Py_ssize_t source, const unsigned char[::1] allowed=None):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(max(n, 1), dtype=np.int32)
    cdef int32_t[::1] dist = dist_arr
    cdef int32_t[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0, k
    cdef int32_t v, u, dv
    cdef bint restricted = allowed is not None
    if restricted and not allowed[source]:
        return dist_arr.tolist()
    dist[source] = 0
    queue[tail] = <int32_t>source
    tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            if dist[u] < 0 and (not restricted or allowed[u]):
                dist[u] = dv
                queue[tail] = u
                tail += 1
    return dist_arr.tolist()


cdef inline int _lowbit_index(uint64_t b) nogil:
    cdef int i = 0
    while not (b & 1):
        b >>= 1
        i += 1
    return i


cdef bint _connected(uint64_t mask, const uint64_t[::1] nbr) nogil:
    cdef uint64_t low = mask & (~mask + 1)
    cdef uint64_t reach = low, frontier = low, grow, f, b
    while frontier:
        grow = 0
        f = frontier
        while f:
            b = f & (~f + 1)
            grow |= nbr[_lowbit_index(b)]
            f ^= b
        grow &= mask & ~reach
        reach |= grow
        frontier = grow
    return reach == mask


cdef long _internal(uint64_t mask, const int32_t[:, ::1] mult) nogil:
    cdef long total = 0
    cdef uint64_t m = mask, rest, b, c
    cdef int v
    while m:
        b = m & (~m + 1)
        m ^= b
        v = _lowbit_index(b)
        rest = m
        while rest:
            c = rest & (~rest + 1)
            rest ^= c
            total += mult[v, _lowbit_index(c)]
    return total


cdef long _cross(uint64_t amask, uint64_t bmask, const int32_t[:, ::1] mult) nogil:
    cdef long total = 0
    cdef uint64_t a = amask, b, bb, c
    cdef int v
    while a:
        b = a & (~a + 1)
        a ^= b
        v = _lowbit_index(b)
        bb = bmask
        while bb:
            c = bb & (~bb + 1)
            bb ^= c
            total += mult[v, _lowbit_index(c)]
    return total


def theta_search(int n, nbr_in, mult_in, int r, long limit):
    if n > 64:
        raise ValueError("compiled theta_search handles at most 64 vertices")
    cdef const uint64_t[::1] nbr = np.ascontiguousarray(nbr_in, dtype=np.uint64)
    cdef const int32_t[:, ::1] mult = np.ascontiguousarray(mult_in, dtype=np.int32)
    cdef list level = [1 << v for v in range(n)]
    cdef set seen = set(level)
    cdef list nxt
    cdef uint64_t mask, m, b, ext, grown, union, low, rest, sub, a, bset
    cdef long need
    cdef int size
    for size in range(2, n + 1):
        if limit >= 0 and size - 2 + r > limit:
            break
        nxt = []
        for py_mask in level:
            mask = py_mask
            ext = 0
            m = mask
            while m:
                b = m & (~m + 1)
                ext |= nbr[_lowbit_index(b)]
                m ^= b
            ext &= ~mask
            while ext:
                b = ext & (~ext + 1)
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
        for py_union in level:
            union = py_union
            if _internal(union, mult) < need:
                continue
            low = union & (~union + 1)
            rest = union ^ low
            sub = rest
            while True:
                sub = (sub - 1) & rest
                a = low | sub
                bset = union ^ a
                if _cross(a, bset, mult) >= r and _connected(a, nbr) and _connected(bset, nbr):
                    return need, int(a), int(bset)
                if sub == 0:
                    break
    return -1, 0, 0
