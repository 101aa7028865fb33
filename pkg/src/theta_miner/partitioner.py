"""Scattered sets, grouped partitions, frontiers, ports and N-critical structure."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import _kernels
from .decomposition import distance_decomposition
from .graph import DisconnectedError, GraphError, Multigraph, is_connected


@dataclass
class GroupedPartition:
    regions: list
    centers: list
    radius: int
    region_dds: list = field(default_factory=list, repr=False)
    owner: list = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.regions)

    def to_dict(self):
        return {
            "kind": "grouped_partition",
            "radius": self.radius,
            "centers": list(self.centers),
            "regions": [list(r) for r in self.regions],
        }


@dataclass(frozen=True)
class FrontierReport:
    region: int
    vertex_frontier: frozenset
    node_frontier: frozenset
    ports: frozenset


def maximal_scattered_set(g: Multigraph, spread: int) -> list:
    """Greedy maximal set with pairwise distances greater than ``spread``.

    Vertices are tried in ascending id; each pick blocks its radius-``spread`` ball.
    """
    if spread < 0:
        raise GraphError("spread must be nonnegative")
    blocked = bytearray(g.n)
    chosen = []
    for v in range(g.n):
        if blocked[v]:
            continue
        chosen.append(v)
        blocked[v] = 1
        dist = {v: 0}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            if dist[x] == spread:
                continue
            for y, _ in g.incident(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    blocked[y] = 1
                    queue.append(y)
    return chosen


def grow_regions(g: Multigraph, centers, rounds: int) -> list:
    """Round-synchronous multi-source growth; regions claim vertices in center order."""
    owner = [-1] * g.n
    layers = []
    for i, s in enumerate(centers):
        owner[s] = i
        layers.append([s])
    regions = [[s] for s in centers]
    for _ in range(rounds):
        nxt_layers = []
        for i, layer in enumerate(layers):
            nxt = []
            for v in sorted(layer):
                for u in g.neighbors(v):
                    if owner[u] == -1:
                        owner[u] = i
                        nxt.append(u)
            regions[i].extend(nxt)
            nxt_layers.append(nxt)
        layers = nxt_layers
        if not any(layers):
            break
    return [tuple(sorted(r)) for r in regions], owner


def _with_dds(g, regions, centers, radius, owner):
    dds = [distance_decomposition(g, s, within=set(r)) for s, r in zip(centers, regions)]
    return GroupedPartition(list(regions), list(centers), radius, dds, owner)


def grouped_partition(g: Multigraph, d: int) -> GroupedPartition:
    """A d-grouped partition grown from a maximal 2d-scattered set."""
    if d < 1:
        raise GraphError(f"radius d must be at least 1, got {d}")
    if g.n == 0 or not is_connected(g):
        raise DisconnectedError("grouped partitions need a connected graph")
    centers = maximal_scattered_set(g, 2 * d)
    regions, owner = grow_regions(g, centers, 2 * d)
    if any(o == -1 for o in owner):
        raise GraphError("region growth left vertices unassigned")
    return _with_dds(g, regions, centers, d, owner)


def singleton_partition(g: Multigraph) -> GroupedPartition:
    """The radius-0 partition into single vertices."""
    return _with_dds(g, [(v,) for v in range(g.n)], list(range(g.n)), 0, list(range(g.n)))


def partition_from_regions(g: Multigraph, regions, centers, radius: int) -> GroupedPartition:
    owner = [-1] * g.n
    for i, reg in enumerate(regions):
        for v in reg:
            owner[v] = i
    return _with_dds(g, [tuple(sorted(r)) for r in regions], list(centers), radius, owner)


def check_grouped_partition(g: Multigraph, gp: GroupedPartition):
    """Re-check both grouped-partition conditions by exhaustive scans."""
    seen = {}
    for i, reg in enumerate(gp.regions):
        for v in reg:
            if v in seen:
                return False, f"vertex {v} in regions {seen[v]} and {i}"
            seen[v] = i
        if not is_connected(g, reg):
            return False, f"region {i} is not connected"
    if len(seen) != g.n:
        return False, "regions do not cover V(G)"
    dists = []
    for i, (s, reg) in enumerate(zip(gp.centers, gp.regions)):
        if seen.get(s) != i:
            return False, f"center {s} is not in region {i}"
        allowed = bytearray(g.n)
        for v in reg:
            allowed[v] = 1
        inner = _kernels.bfs(g, s, allowed)
        if max(inner[v] for v in reg) > 2 * gp.radius:
            return False, f"region {i}: eccentricity of its center exceeds 2d"
        dists.append(_kernels.bfs(g, s))
    for eid, (x, y) in enumerate(g.edges):
        i, j = seen[x], seen[y]
        if i != j and (dists[i][x] < gp.radius or dists[j][y] < gp.radius):
            return False, f"edge {eid} ({x}, {y}) leaves a region too close to a center"
    return True, ""


def frontier_report(g: Multigraph, gp: GroupedPartition, i: int) -> FrontierReport:
    """Vertex-frontier, node-frontier and ports of region ``i``."""
    if not 0 <= i < len(gp.regions):
        raise GraphError(f"no region {i}")
    d = gp.radius
    dd = gp.region_dds[i]
    owner = gp.owner
    depth_of = {v: dd.depth[t] for t, bag in enumerate(dd.bags) for v in bag}
    outward = {v for v in gp.regions[i] if any(owner[u] != i for u in g.neighbors(v))}
    # vertices of V^{>=d} that reach outside through V^{>=d}
    reach = {v for v in outward if depth_of[v] >= d}
    queue = deque(sorted(reach))
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if owner[u] == i and u not in reach and depth_of[u] >= d:
                reach.add(u)
                queue.append(u)
    frontier = set()
    if d >= 1:
        for v in gp.regions[i]:
            if depth_of[v] == d - 1 and (v in outward or any(u in reach for u in g.neighbors(v))):
                frontier.add(v)
    nodes = {dd.node_of[v] for v in frontier}
    ports = {
        t for t, bag in enumerate(dd.bags) if dd.depth[t] >= d - 1 and any(v in outward for v in bag)
    }
    return FrontierReport(i, frozenset(frontier), frozenset(nodes), frozenset(ports))


# rooted trees are parent arrays with -1 at the root


def _children(parent):
    kids = [[] for _ in parent]
    for t, p in enumerate(parent):
        if p >= 0:
            kids[p].append(t)
    return kids


def _is_ancestor(parent, a, b):
    """Is ``a`` a proper ancestor of ``b``?"""
    x = parent[b]
    while x != -1:
        if x == a:
            return True
        x = parent[x]
    return False


def check_antichain(parent, N):
    for a in N:
        for b in N:
            if a != b and _is_ancestor(parent, a, b):
                raise GraphError(f"node {b} is a descendant of node {a}; N must be an antichain")


def critical_vertices(parent, N) -> set:
    """N plus every node with at least two children whose subtrees meet N."""
    N = set(N)
    check_antichain(parent, N)
    kids = _children(parent)
    marked = [False] * len(parent)
    order = _postorder(parent, kids)
    out = set(N)
    for t in order:
        hits = sum(1 for c in kids[t] if marked[c])
        if hits >= 2:
            out.add(t)
        marked[t] = t in N or hits > 0
    return out


def _postorder(parent, kids):
    root = parent.index(-1)
    out, stack = [], [(root, False)]
    while stack:
        t, done = stack.pop()
        if done:
            out.append(t)
            continue
        stack.append((t, True))
        for c in reversed(kids[t]):
            stack.append((c, False))
    return out


def unimportant_paths(parent, N) -> list:
    """All N-unimportant paths, each listed from the upper endpoint down."""
    crit = critical_vertices(parent, N)
    paths = []
    for c in sorted(crit):
        path = [c]
        x = parent[c]
        while x != -1 and x not in crit:
            path.append(x)
            x = parent[x]
        if x != -1:
            path.append(x)
            paths.append(path[::-1])
    inner = {}
    for k, path in enumerate(paths):
        for t in path[1:-1]:
            if t in inner:
                raise AssertionError(f"node {t} is internal to unimportant paths {inner[t]} and {k}")
            inner[t] = k
    return paths


def root_stem(parent, N) -> list:
    """Path from the root down to the highest N-critical node (``[root]`` if the
    root is critical, ``[]`` when N is empty)."""
    crit = critical_vertices(parent, N)
    if not crit:
        return []
    kids = _children(parent)
    t = parent.index(-1)
    path = [t]
    while t not in crit:
        t = next(c for c in kids[t] if _meets(c, crit, kids))
        path.append(t)
    return path


def _meets(t, crit, kids):
    stack = [t]
    while stack:
        x = stack.pop()
        if x in crit:
            return True
        stack.extend(kids[x])
    return False


def _node_depths(parent):
    depth = [0] * len(parent)
    for t in range(len(parent)):
        k, x = 0, t
        while parent[x] != -1:
            x = parent[x]
            k += 1
        depth[t] = k
    return depth


def leaf_lower_bound_check(parent, N, d: int, k: int) -> bool:
    """Evaluate |N| >= 2^(d/k) exactly, after validating the lemma's preconditions."""
    if k < 1:
        raise GraphError("k must be at least 1")
    if d < 0:
        raise GraphError("d must be nonnegative")
    N = set(N)
    check_antichain(parent, N)
    depth = _node_depths(parent)
    shallow = [t for t in N if depth[t] < d]
    if shallow:
        raise GraphError(f"precondition: nodes {sorted(shallow)} of N are at depth < d")
    long_paths = [p for p in unimportant_paths(parent, N) if len(p) - 1 > k]
    if long_paths:
        raise GraphError(f"precondition: unimportant path {long_paths[0]} is longer than k")
    # |N| >= 2^(d/k)  <=>  |N|^k >= 2^d
    return len(N) ** k >= 2 ** d


def stem_adjusted_bound_check(parent, N, d: int, k: int) -> bool:
    """The bound with the root stem discounted: |N|^k >= 2^(d - stem)."""
    N = set(N)
    if not N:
        return d <= 0
    stem = len(root_stem(parent, N)) - 1
    return len(N) ** k >= 2 ** max(0, d - stem)
