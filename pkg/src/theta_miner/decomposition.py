"""Distance-decompositions and rooted tree-partitions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import _kernels
from .graph import DisconnectedError, GraphError, Multigraph


class InvariantError(AssertionError):
    """An internal guarantee failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class RootedTreePartition:
    """Bags indexed by a rooted tree given as a parent array (``-1`` at the root)."""

    parent: tuple
    bags: tuple

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    def covered(self) -> set:
        return {v for bag in self.bags for v in bag}

    def tree_edges(self):
        return [(p, t) for t, p in enumerate(self.parent) if p >= 0]


def tree_partition_width(g: Multigraph, tp: RootedTreePartition) -> int:
    """Max of bag sizes and of edge counts across each tree edge (edges of the
    subgraph induced by the covered vertices)."""
    owner = {}
    for t, bag in enumerate(tp.bags):
        for v in bag:
            owner[v] = t
    across = {}
    for u, v in g.edges:
        if u in owner and v in owner and owner[u] != owner[v]:
            key = (min(owner[u], owner[v]), max(owner[u], owner[v]))
            across[key] = across.get(key, 0) + 1
    width = max((len(b) for b in tp.bags), default=0)
    for p, t in tp.tree_edges():
        width = max(width, across.get((min(p, t), max(p, t)), 0))
    return width


def check_tree_partition(g: Multigraph, tp: RootedTreePartition, vertices):
    """Is ``tp`` a rooted tree-partition of ``g[vertices]``? Returns ``(ok, problem)``."""
    problem = _tree_problem(tp.parent)
    if problem:
        return False, problem
    vs = set(vertices)
    seen = {}
    for t, bag in enumerate(tp.bags):
        if not bag:
            return False, f"bag {t} is empty"
        for v in bag:
            if v in seen:
                return False, f"vertex {v} in bags {seen[v]} and {t}"
            seen[v] = t
    if set(seen) != vs:
        return False, "bags do not partition the vertex set"
    if len(tp.bags) == 1:
        return True, ""
    adjacent = {(min(p, t), max(p, t)) for p, t in tp.tree_edges()}
    for eid, (u, v) in enumerate(g.edges):
        if u in vs and v in vs and seen[u] != seen[v]:
            if (min(seen[u], seen[v]), max(seen[u], seen[v])) not in adjacent:
                return False, f"edge {eid} ({u}, {v}) joins non-adjacent bags {seen[u]} and {seen[v]}"
    return True, ""


def _tree_problem(parent):
    roots = [t for t, p in enumerate(parent) if p == -1]
    if len(roots) != 1:
        return f"tree has {len(roots)} roots"
    n = len(parent)
    for t in range(n):
        seen = 0
        x = t
        while x != -1:
            if not -1 <= parent[x] < n:
                return f"node {x} has invalid parent {parent[x]}"
            x = parent[x]
            seen += 1
            if seen > n:
                return "parent pointers contain a cycle"
    return ""


class DistanceDecomposition:
    """BFS-layered rooted tree-partition of ``graph[scope]`` with a single-vertex root bag.

    Node 0 is the root. ``bags[t]`` are sorted vertex tuples, ``parent_edges[t]``
    the edge ids between ``bags[t]`` and the parent bag.
    """

    def __init__(self, graph, origin, parent, bags, parent_edges=None, scope=None):
        self.graph = graph
        self.origin = origin
        self.parent = tuple(parent)
        self.bags = tuple(tuple(sorted(b)) for b in bags)
        self.scope = frozenset(range(graph.n)) if scope is None else frozenset(scope)
        n_nodes = len(self.parent)
        self.children = tuple(
            tuple(c for c in range(n_nodes) if self.parent[c] == t) for t in range(n_nodes)
        )
        self.node_of = {}
        for t, bag in enumerate(self.bags):
            for v in bag:
                self.node_of.setdefault(v, t)
        self.depth = self._depths()
        self.node_height = self._heights()
        self.height = self.node_height[0] if n_nodes else 0
        self.tin, self.tout = self._euler()
        if parent_edges is None:
            parent_edges = self._compute_parent_edges()
        self.parent_edges = tuple(tuple(x) for x in parent_edges)

    def __len__(self):
        return len(self.parent)

    def _depths(self):
        depth = [-1] * len(self.parent)
        for t in range(len(self.parent)):
            chain = []
            x = t
            while x != -1 and depth[x] < 0 and len(chain) <= len(self.parent):
                chain.append(x)
                x = self.parent[x]
            base = -1 if x == -1 else depth[x]
            for y in reversed(chain):
                base += 1
                depth[y] = base
        return tuple(depth)

    def _heights(self):
        h = [0] * len(self.parent)
        for t in sorted(range(len(self.parent)), key=lambda x: -self.depth[x]):
            p = self.parent[t]
            if p >= 0:
                h[p] = max(h[p], h[t] + 1)
        return tuple(h)

    def _euler(self):
        n = len(self.parent)
        tin, tout = [0] * n, [0] * n
        if not n:
            return tin, tout
        clock = 0
        stack = [(0, False)]
        visited = set()
        while stack:
            t, done = stack.pop()
            if done:
                tout[t] = clock
                continue
            if t in visited:
                continue
            visited.add(t)
            tin[t] = clock
            clock += 1
            stack.append((t, True))
            for c in reversed(self.children[t]):
                stack.append((c, False))
        return tin, tout

    def _compute_parent_edges(self):
        pe = [[] for _ in self.parent]
        for eid, (u, v) in enumerate(self.graph.edges):
            if u not in self.node_of or v not in self.node_of:
                continue
            tu, tv = self.node_of[u], self.node_of[v]
            if tu != tv:
                if self.parent[tu] == tv:
                    pe[tu].append(eid)
                elif self.parent[tv] == tu:
                    pe[tv].append(eid)
        return pe

    def is_descendant(self, a, b) -> bool:
        """True when node ``a`` lies in the subtree of ``b`` (``a == b`` included)."""
        return self.tin[b] <= self.tin[a] < self.tout[b]

    def descendants(self, t):
        out = []
        stack = [t]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return sorted(out)

    def subtree_vertices(self, t) -> set:
        return {v for x in self.descendants(t) for v in self.bags[x]}

    def as_tree_partition(self) -> RootedTreePartition:
        return RootedTreePartition(self.parent, self.bags)

    def to_dict(self):
        return {
            "kind": "distance_decomposition",
            "origin": self.origin,
            "height": self.height,
            "nodes": [
                {
                    "id": t,
                    "parent": self.parent[t],
                    "depth": self.depth[t],
                    "bag": list(self.bags[t]),
                    "parent_edges": list(self.parent_edges[t]),
                }
                for t in range(len(self.parent))
            ],
        }


def distance_decomposition(g: Multigraph, origin: int, within=None) -> DistanceDecomposition:
    """Distance-decomposition of ``g[within]`` (default: all of ``g``) with the given origin.

    Nodes at depth ``h`` are the components of the subgraph induced by vertices
    at distance >= h, restricted to layer ``h``. Nodes are numbered in BFS order
    of the tree, children ordered by their smallest vertex.
    """
    scope = set(range(g.n)) if within is None else set(within)
    if origin not in scope:
        raise GraphError(f"origin {origin} not in the vertex set")
    allowed = None
    if within is not None:
        allowed = bytearray(g.n)
        for v in scope:
            allowed[v] = 1
    dist = _kernels.bfs(g, origin, allowed)
    unreached = [v for v in scope if dist[v] < 0]
    if unreached:
        raise DisconnectedError(f"graph is disconnected: {len(unreached)} vertices unreachable from {origin}")
    depth_max = max(dist[v] for v in scope)
    layers = [[] for _ in range(depth_max + 1)]
    for v in sorted(scope):
        layers[dist[v]].append(v)

    dsu = {}

    def find(x):
        root = x
        while dsu[root] != root:
            root = dsu[root]
        while dsu[x] != root:
            dsu[x], x = root, dsu[x]
        return root

    # nodes[h] = list of (component key, bag); up[h][j] = key of the parent at depth h-1
    nodes = [None] * (depth_max + 1)
    up = [None] * (depth_max + 1)
    for h in range(depth_max, -1, -1):
        for v in layers[h]:
            dsu[v] = v
        for v in layers[h]:
            for w in g.neighbors(v):
                if w in dsu:
                    a, b = find(v), find(w)
                    if a != b:
                        dsu[max(a, b)] = min(a, b)
        groups = {}
        for v in layers[h]:
            groups.setdefault(find(v), []).append(v)
        nodes[h] = list(groups.items())
        if h < depth_max:
            up[h + 1] = [find(bag[0]) for _, bag in nodes[h + 1]]

    kids = {}
    for h in range(1, depth_max + 1):
        for j, key in enumerate(up[h]):
            kids.setdefault((h - 1, key), []).append(nodes[h][j])
    parent = [-1]
    bags = [tuple(layers[0])]
    frontier = [(0, nodes[0][0][0])]
    h = 0
    while frontier:
        nxt = []
        for node, key in frontier:
            for own_key, bag in sorted(kids.get((h, key), []), key=lambda kb: min(kb[1])):
                parent.append(node)
                bags.append(tuple(bag))
                nxt.append((len(bags) - 1, own_key))
        frontier = nxt
        h += 1
    dd = DistanceDecomposition(g, origin, parent, bags, scope=scope)
    _assert_layered(g, dd, dist)
    return dd


def _assert_layered(g, dd, dist):
    for t, bag in enumerate(dd.bags):
        if any(dist[v] != dd.depth[t] for v in bag):
            raise InvariantError(f"bag {t} mixes BFS layers")
    for t in range(1, len(dd)):
        if not dd.parent_edges[t]:
            raise InvariantError(f"node {t} has no edge to its parent bag")


def check_dd_invariants(g: Multigraph, dd: DistanceDecomposition):
    """Re-derive every distance-decomposition condition from scratch.

    Returns ``(ok, first_violation)``; the message names the failing condition.
    """
    problem = _tree_problem(dd.parent)
    if problem:
        return False, f"tree: {problem}"
    if dd.parent[0] != -1:
        return False, "tree: node 0 must be the root"
    scope = set(dd.scope)
    owner = {}
    for t, bag in enumerate(dd.bags):
        if not bag:
            return False, f"partition: bag {t} is empty"
        for v in bag:
            if v in owner:
                return False, f"partition: vertex {v} in bags {owner[v]} and {t}"
            owner[v] = t
    if set(owner) != scope:
        return False, "partition: bags do not cover exactly the vertex set"
    if tuple(dd.bags[0]) != (dd.origin,):
        return False, f"item (i): root bag {list(dd.bags[0])} is not the origin {dd.origin}"

    # independent BFS on the induced subgraph
    dist = {dd.origin: 0}
    queue = deque([dd.origin])
    while queue:
        v = queue.popleft()
        for w, _ in g.incident(v):
            if w in scope and w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    if len(dist) != len(scope):
        return False, "graph: vertex set is not connected"
    tdepth = {}
    for t in range(len(dd.parent)):
        k, x = 0, t
        while dd.parent[x] != -1:
            x = dd.parent[x]
            k += 1
        tdepth[t] = k
    for t, bag in enumerate(dd.bags):
        for x in bag:
            if dist[x] != tdepth[t]:
                return False, f"item (ii): vertex {x} at distance {dist[x]} sits in node {t} at depth {tdepth[t]}"

    children = [[] for _ in dd.parent]
    for t, p in enumerate(dd.parent):
        if p >= 0:
            children[p].append(t)

    def subtree(t):
        out, stack = set(), [t]
        while stack:
            x = stack.pop()
            out.update(dd.bags[x])
            stack.extend(children[x])
        return out

    def comps(vs):
        left, out = set(vs), []
        while left:
            s = min(left)
            seen = {s}
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w, _ in g.incident(v):
                    if w in left and w not in seen:
                        seen.add(w)
                        queue.append(w)
            left -= seen
            out.append(frozenset(seen))
        return out

    order = sorted(range(len(dd.parent)), key=lambda t: (tdepth[t], t))
    for t in order:
        gt = subtree(t)
        if len(comps(gt)) != 1:
            return False, f"item (iii): G_t of node {t} is not connected"
        below = set(comps(gt - set(dd.bags[t])))
        kids = {frozenset(subtree(c)) for c in children[t]}
        if below != kids:
            return False, f"item (iv): children of node {t} are not the components of G_t minus its bag"

    ok, problem = check_tree_partition(g, RootedTreePartition(dd.parent, dd.bags), scope)
    if not ok:
        return False, f"tree-partition: {problem}"
    expected = [[] for _ in dd.parent]
    for eid, (u, v) in enumerate(g.edges):
        if u in owner and v in owner and owner[u] != owner[v]:
            a, b = owner[u], owner[v]
            expected[a if dd.parent[a] == b else b].append(eid)
    for t in range(1, len(dd.parent)):
        if sorted(dd.parent_edges[t]) != expected[t]:
            return False, f"parent edges: node {t} records {list(dd.parent_edges[t])}, expected {expected[t]}"
    if dd.parent_edges and dd.parent_edges[0]:
        return False, "parent edges: root must have none"
    return True, ""


def bounded_escape_path(dd: DistanceDecomposition, t: int, U):
    """Shortest path inside G_t from the set ``U`` to the rest of bag ``t``.

    Returns ``(vertices, edge_ids)``. The path goes down one level per step and
    then back up, with at most one step inside a single bag at the bottom, so its
    length is at most ``2 * height + 1``. Both facts are asserted.
    """
    g = dd.graph
    bag = set(dd.bags[t])
    U = set(U)
    if t == 0:
        raise GraphError("escape paths are defined for non-root nodes")
    if not U or not U < bag:
        raise GraphError("U must be a nonempty proper subset of the bag")
    target = bag - U

    def inside(v):
        node = dd.node_of.get(v)
        return node is not None and dd.is_descendant(node, t)

    prev = {}
    queue = deque()
    for u in sorted(U):
        prev[u] = (-1, -1)
        queue.append(u)
    end = None
    while queue and end is None:
        v = queue.popleft()
        for w, eid in g.incident(v):
            if w in prev or not inside(w):
                continue
            prev[w] = (v, eid)
            if w in target:
                end = w
                break
            queue.append(w)
    if end is None:
        raise InvariantError(f"bag {t}: no path from U to the rest of the bag inside G_t")
    verts, eids = [end], []
    while prev[verts[-1]][0] != -1:
        v, eid = prev[verts[-1]]
        eids.append(eid)
        verts.append(v)
    verts.reverse()
    eids.reverse()
    k = dd.node_height[t]
    L = len(eids)
    if L > 2 * k + 1:
        raise InvariantError(f"escape path of length {L} exceeds 2*height+1={2 * k + 1}")
    # Every interior vertex has a straight route back to the bag, so a shortest
    # path is a tent: one level down per step, at most one edge inside a bag.
    levels = [dd.depth[dd.node_of[v]] - dd.depth[t] for v in verts]
    if levels != [min(i, L - i) for i in range(L + 1)]:
        raise InvariantError(f"escape path {verts} is not straight (levels {levels})")
    return verts, eids
