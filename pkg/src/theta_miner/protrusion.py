"""Edge-protrusions: folding a long decomposition path and checking the result."""

from __future__ import annotations

from dataclasses import dataclass

from .decomposition import (
    DistanceDecomposition,
    InvariantError,
    RootedTreePartition,
    check_tree_partition,
    tree_partition_width,
)
from .graph import GraphError, Multigraph, is_connected
from .partitioner import GroupedPartition, critical_vertices, frontier_report, root_stem


@dataclass(frozen=True)
class ProtrusionCertificate:
    """``y`` with boundary ``N_G(y)`` and a rooted tree-partition of ``G[y | boundary]``
    whose root bag is the boundary. ``extension`` is the node count of the tree."""

    y: tuple
    boundary: tuple
    tree_partition: RootedTreePartition
    t: int
    extension: int
    connected: bool = True
    folded_path_length: int = 0

    def to_dict(self):
        return {
            "kind": "protrusion",
            "y": list(self.y),
            "boundary": list(self.boundary),
            "tree": {
                "parent": list(self.tree_partition.parent),
                "bags": [list(b) for b in self.tree_partition.bags],
            },
            "t": self.t,
            "extension": self.extension,
            "connected": self.connected,
            "folded_path_length": self.folded_path_length,
        }


def neighborhood(g: Multigraph, vertices) -> set:
    ys = set(vertices)
    return {u for v in ys for u in g.neighbors(v) if u not in ys}


def _renumber(root, kids_of, bags_of):
    """BFS ids from ``root``; children visited by smallest key."""
    order, parent = [root], [-1]
    index = {root: 0}
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for c in sorted(kids_of.get(x, ())):
            index[c] = len(order)
            order.append(c)
            parent.append(index[x])
    return RootedTreePartition(tuple(parent), tuple(tuple(sorted(bags_of[x])) for x in order))


def fold_dd_path(g: Multigraph, dd: DistanceDecomposition, path, r: int, w: int) -> ProtrusionCertificate:
    """Fold the chain ``path = t_0..t_p`` (t_p below t_0) of ``dd`` onto itself.

    Node t_j is identified with t_{p-j} for j <= (p-1)//2; an even-length chain
    keeps its middle node. The root bag is ``N_G(Y)``.
    """
    p = len(path) - 1
    if p < 2:
        raise GraphError("the path needs at least two edges")
    for a, b in zip(path, path[1:]):
        if dd.parent[b] != a:
            raise GraphError(f"nodes {a} -> {b} are not parent -> child in the decomposition")
    t0, t1, tp = path[0], path[1], path[-1]
    below_tp = set(dd.descendants(tp)) - {tp}
    kept = [t for t in dd.descendants(t1) if t not in below_tp]
    y = set()
    for t in kept:
        if t != tp:
            y.update(dd.bags[t])
    bnd = neighborhood(g, y)
    allowed = set(dd.bags[t0]) | set(dd.bags[tp])
    if not bnd <= allowed:
        raise GraphError(
            f"vertices {sorted(bnd - allowed)} outside the path ends touch the folded part"
        )
    merge = {}
    for j in range((p - 1) // 2 + 1):
        merge[path[p - j]] = path[j]

    def image(t):
        return merge.get(t, t)

    bags_of = {}
    for t in kept:
        if t == tp:
            continue
        bags_of.setdefault(image(t), set()).update(dd.bags[t])
    bags_of[t0] = set(bnd)
    adj = {x: set() for x in bags_of}
    for t in kept:
        a, b = image(dd.parent[t]), image(t)
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    if sum(len(v) for v in adj.values()) != 2 * (len(adj) - 1):
        raise InvariantError("folding did not produce a tree")
    kids_of, seen = {}, {t0}
    stack = [t0]
    while stack:
        x = stack.pop()
        for c in adj[x]:
            if c not in seen:
                seen.add(c)
                kids_of.setdefault(x, set()).add(c)
                stack.append(c)
    if len(seen) != len(adj):
        raise InvariantError("folded tree is disconnected")
    tp_new = _renumber(t0, kids_of, bags_of)
    if p % 2:
        length = (p - 1) // 2
    else:
        length = p // 2
    width = tree_partition_width(g, tp_new)
    return ProtrusionCertificate(
        tuple(sorted(y)),
        tuple(sorted(bnd)),
        tp_new,
        max(2 * r - 2, width),
        len(tp_new.parent),
        is_connected(g, y | bnd),
        length,
    )


def subtree_protrusion(g: Multigraph, dd: DistanceDecomposition, t: int, r: int) -> ProtrusionCertificate:
    """Y = G_t; the root bag is its neighborhood, which lies in the parent bag."""
    if t == 0:
        raise GraphError("the root subtree has no boundary")
    y = dd.subtree_vertices(t)
    bnd = neighborhood(g, y)
    if not bnd <= set(dd.bags[dd.parent[t]]):
        raise GraphError("G_t has neighbors outside its parent bag")
    sub = dd.descendants(t)
    kids_of = {-1: {t}}
    bags_of = {-1: bnd}
    for x in sub:
        bags_of[x] = set(dd.bags[x])
        if x != t:
            kids_of.setdefault(dd.parent[x], set()).add(x)
    tp_new = _renumber(-1, kids_of, bags_of)
    width = tree_partition_width(g, tp_new)
    return ProtrusionCertificate(
        tuple(sorted(y)), tuple(sorted(bnd)), tp_new, max(2 * r - 2, width),
        len(tp_new.parent), is_connected(g, y | bnd), 0,
    )


def fold_unimportant_path(g: Multigraph, gp: GroupedPartition, i: int, path, r: int, w: int) -> ProtrusionCertificate:
    """Fold an N_i-unimportant path (or the root stem above the highest N_i-critical
    node) of region ``i``'s decomposition into a (2r-2)-edge-protrusion."""
    dd = gp.region_dds[i]
    path = list(path)
    p = len(path) - 1
    if p < 2 * (w + 1):
        raise GraphError(f"precondition: path length {p} is below 2(w+1) = {2 * (w + 1)}")
    heavy = [t for t in range(1, len(dd)) if len(dd.parent_edges[t]) > r - 1]
    if heavy:
        raise GraphError(f"precondition: node {heavy[0]} has |E^(t)| = {len(dd.parent_edges[heavy[0]])} > r-1")
    if not dd.is_descendant(path[-1], path[0]):
        raise GraphError("precondition: the path must run from an ancestor down to a descendant")
    nodes = frontier_report(g, gp, i).node_frontier
    crit = critical_vertices(list(dd.parent), nodes)
    inner_crit = [t for t in path[1:-1] if t in crit]
    stem = root_stem(list(dd.parent), nodes)
    if inner_crit:
        raise GraphError(f"precondition: internal node {inner_crit[0]} is N-critical")
    if path[-1] not in crit or (path[0] not in crit and path != stem):
        raise GraphError("precondition: the path endpoints are not both N-critical")
    cert = fold_dd_path(g, dd, path, r, w)
    if cert.t > 2 * r - 2:
        raise InvariantError(f"folded width {cert.t} exceeds 2r-2")
    if not set(cert.boundary) <= set(dd.bags[path[0]]) | set(dd.bags[path[-1]]):
        raise InvariantError("boundary escapes the two end bags")
    return cert


def verify_protrusion(g: Multigraph, c: ProtrusionCertificate, t: int, w: int):
    """Returns ``(ok, violations)``."""
    bad = []
    y, bnd = set(c.y), set(c.boundary)
    if not y:
        bad.append("Y is empty")
    if y & bnd:
        bad.append("Y and its boundary overlap")
    if any(not 0 <= v < g.n for v in y | bnd):
        return False, ["unknown vertex"]
    actual = neighborhood(g, y)
    if actual != bnd:
        bad.append(f"boundary {sorted(bnd)} differs from N_G(Y) = {sorted(actual)}")
    tp = c.tree_partition
    ok, problem = check_tree_partition(g, tp, y | bnd)
    if not ok:
        bad.append(f"tree-partition: {problem}")
        return False, bad
    if set(tp.bags[tp.root]) != actual:
        bad.append("root bag is not N_G(Y)")
    width = tree_partition_width(g, tp)
    if width > c.t:
        bad.append(f"width {width} exceeds the recorded bound {c.t}")
    if c.t > t:
        bad.append(f"recorded width bound {c.t} exceeds {t}")
    if c.extension != len(tp.parent):
        bad.append(f"extension {c.extension} differs from the node count {len(tp.parent)}")
    if c.extension <= w:
        bad.append(f"extension {c.extension} is not more than w={w}")
    if c.connected and not is_connected(g, y | bnd):
        bad.append("Y with its boundary is not connected")
    return not bad, bad
