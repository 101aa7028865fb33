"""Graph corpora shared by the property tests and the acceptance suite."""

import networkx as nx

from theta_miner.generators import random_connected_simple, random_multigraph
from theta_miner.graph import Multigraph

# Nine-vertex sample graph on u0..u8, edges in a fixed reference order
SAMPLE9_EDGES = [(5, 6), (6, 8), (8, 7), (7, 5), (5, 3), (3, 4), (4, 5), (1, 3), (3, 0), (0, 2), (2, 3)]


def sample9():
    return Multigraph(9, SAMPLE9_EDGES)


def small_connected():
    """Every connected graph on 1..7 vertices with at least one edge (networkx atlas)."""
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_edges() and nx.is_connected(G):
            yield Multigraph(G.number_of_nodes(), sorted(G.edges()))


def random_graph(s):
    """Seeded graph number ``s``: simple for even s, multigraph for odd s, 5 <= n <= 40."""
    n = 5 + s % 36
    if s % 2 == 0:
        return random_connected_simple(n, s % 3 * n // 4 + s % 5, s)
    return random_multigraph(n, n - 1 + s % 7 + (s % 4) * n // 5, s)


def random_corpus(count=500):
    return [random_graph(s) for s in range(count)]


def dd_corpus(count=1000):
    """Random connected multigraphs with at most 60 vertices."""
    out = []
    for s in range(count):
        n = 1 + s % 60
        extra = (s * 7) % (n + 3)
        out.append(random_multigraph(n, n - 1 + (extra if n > 1 else 0), 10_000 + s))
    return out


def theorem5_grid(g, r):
    for z in range(r + 1, g.m + 1):
        for w in (1, 2, 3):
            yield z, w


def rooted_trees(max_nodes):
    """All unlabeled rooted trees with 1..max_nodes nodes, as parent arrays in BFS order."""
    level = [()]  # a tree is the sorted tuple of its child subtrees
    out = []
    for _ in range(max_nodes):
        out.extend(level)
        nxt = {}
        for tree in level:
            for grown in _add_leaf(tree):
                nxt.setdefault(grown, None)
        level = sorted(nxt)
    return [_to_parent(t) for t in out]


def _add_leaf(tree):
    yield tuple(sorted(tree + ((),)))
    for i, sub in enumerate(tree):
        for grown in _add_leaf(sub):
            yield tuple(sorted(tree[:i] + (grown,) + tree[i + 1 :]))


def _to_parent(tree):
    parent, queue = [-1], [(tree, 0)]
    for node, idx in queue:
        for sub in node:
            parent.append(idx)
            queue.append((sub, len(parent) - 1))
    return parent


def antichains(parent):
    """Every antichain of the rooted tree (including the empty one)."""
    kids = [[] for _ in parent]
    for t, p in enumerate(parent):
        if p >= 0:
            kids[p].append(t)

    def rec(t):
        combos = [frozenset()]
        for c in kids[t]:
            combos = [a | b for a in combos for b in rec(c)]
        return combos + [frozenset([t])]

    return rec(parent.index(-1))
