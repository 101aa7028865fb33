"""Brute-force ground truth: exact theta_r-girth, loose connectivity, the numeric
bound lemma and quotient degrees. Everything here is exponential or exact on
purpose; the size guard keeps accidental large calls out."""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import _kernels
from .graph import GraphError, Multigraph, components, quotient_degrees, theta_from_branch_sets

INFINITY = math.inf
DEFAULT_GUARD = 14


class SizeGuardError(GraphError):
    pass


def size_guard() -> int:
    return int(os.environ.get("THETA_MINER_SIZE_GUARD", DEFAULT_GUARD))


def _guard(g: Multigraph, force: bool):
    if not force and g.n > size_guard():
        raise SizeGuardError(
            f"{g.n} vertices exceed the oracle size guard {size_guard()} "
            "(set THETA_MINER_SIZE_GUARD to override)"
        )


def _masks(g: Multigraph):
    nbr = [0] * g.n
    mult = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
        mult[u][v] += 1
        mult[v][u] += 1
    return nbr, mult


def brute_theta_model(g: Multigraph, r: int, force: bool = False):
    """A minimum theta_r-model certificate, or None if g has no theta_r minor."""
    if r < 1:
        raise GraphError("r must be positive")
    _guard(g, force)
    nbr, mult = _masks(g)
    total, a, b = _kernels.theta_search_any(g.n, nbr, mult, r, -1)
    if total < 0:
        return None
    av = [v for v in range(g.n) if a >> v & 1]
    bv = [v for v in range(g.n) if b >> v & 1]
    return theta_from_branch_sets(g, av, bv, r)


def brute_theta_girth(g: Multigraph, r: int, force: bool = False):
    """Exact theta_r-girth (``math.inf`` when there is no theta_r minor)."""
    c = brute_theta_model(g, r, force)
    return INFINITY if c is None else c.total_edges


def girth(g: Multigraph):
    """Shortest cycle length by deleting each edge and measuring the detour."""
    best = INFINITY
    for e, (u, v) in enumerate(g.edges):
        dist = {u: 0}
        queue = deque([u])
        while queue and v not in dist:
            x = queue.popleft()
            for y, f in g.incident(x):
                if f != e and y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


@dataclass(frozen=True)
class LooseConnectivityWitness:
    a_side: tuple
    b_side: tuple
    separator: tuple


def check_loose_connectivity(g: Multigraph, alpha: int, beta: int, force: bool = False):
    """``(True, None)`` if g is (alpha, beta)-loosely connected, else ``(False, witness)``.

    Every separator with fewer than beta vertices is tried (by size, then
    lexicographically); the components left behind are split by subset sum.
    """
    if alpha < 0 or beta < 0:
        raise GraphError("alpha and beta must be nonnegative")
    _guard(g, force)
    vs = list(range(g.n))
    for size in range(0, min(beta, g.n + 1)):
        for sep in combinations(vs, size):
            rest = set(vs) - set(sep)
            comps = components(g, rest) if rest else []
            split = _split(comps, len(rest), alpha)
            if split is not None:
                a = set(sep) | split
                b = set(sep) | (rest - split)
                return False, LooseConnectivityWitness(tuple(sorted(a)), tuple(sorted(b)), tuple(sep))
    return True, None


def _split(comps, total, alpha):
    # reachable sums over component sizes, remembering one witness per sum
    reach = {0: ()}
    for idx, comp in enumerate(comps):
        for s, used in list(reach.items()):
            t = s + len(comp)
            if t not in reach:
                reach[t] = used + (idx,)
    for s in sorted(reach):
        if s > alpha and total - s > alpha:
            return {v for idx in reach[s] for v in comps[idx]}
    return None


def quotient_min_degree(g: Multigraph, parts) -> int:
    """Minimum distinct-neighbor degree of the quotient by ``parts``."""
    from .graph import is_connected

    for i, part in enumerate(parts):
        if not is_connected(g, part):
            raise GraphError(f"part {i} is not connected")
    return min(quotient_degrees(g, parts))


# ---------------------------------------------------------------- numeric lemma


def _log2_interval(x: int, bits: int):
    """Rational bounds ``lo <= log2(x) <= hi`` with ``hi - lo <= 2**-j`` for the
    number j of fraction bits that could be decided with ``bits`` of working
    precision. Integer arithmetic only."""
    if x < 1:
        raise ValueError("x must be positive")
    e = x.bit_length() - 1
    if x == 1 << e:
        return Fraction(e), Fraction(e)
    one = 1 << bits
    two = one << 1
    # y = x / 2^e in [1, 2), as a fixed-point interval [lo, hi] / 2^bits
    shift = bits - e
    if shift >= 0:
        lo = hi = x << shift
    else:
        lo = x >> -shift
        hi = -((-x) >> -shift)
    frac = 0
    j = 0
    while j < bits - 8:
        lo = (lo * lo) >> bits
        hi = -((-(hi * hi)) >> bits)
        frac <<= 1
        if lo >= two:
            frac |= 1
            lo >>= 1
            hi = -((-hi) >> 1)
        elif hi >= two:
            frac >>= 1
            break
        j += 1
    low = Fraction(e) + Fraction(frac, 1 << j)
    return low, low + Fraction(1, 1 << j)


def bound_lemma_terms(r: int, k: int, c: int = 6 ** 3):
    """Integers (A, B, D, X) with the lemma equivalent to A*log2(k) >= B + D*log2(X)."""
    g_val = (6 ** (2 * r - 3) - 1) // 5
    D = 4 * r * (2 * g_val + 1)
    X = (r - 1) * (k * (r + 1) - 1)
    return c ** r, 5 * r, D, X


def check_bound_lemma(r: int, k: int, c: int = 6 ** 3) -> bool:
    """Is 2^((c^r log2 k - 5r) / (4r(2g(2r-2)+1))) / (r-1) >= k(r+1) - 1 ?

    Decided exactly: both sides are bracketed by rational log2 bounds whose
    precision grows until the comparison is certain.
    """
    if not (k >= r >= 2):
        raise GraphError(f"need k >= r >= 2, got r={r}, k={k}")
    A, B, D, X = bound_lemma_terms(r, k, c)
    bits = 64
    while True:
        klo, khi = _log2_interval(k, bits)
        xlo, xhi = _log2_interval(X, bits)
        if A * klo >= B + D * xhi:
            return True
        if A * khi < B + D * xlo:
            return False
        if klo == khi and xlo == xhi:
            return A * klo >= B + D * xlo
        bits *= 2
        if bits > 1 << 16:
            raise ArithmeticError("log2 bracketing did not separate the two sides")

