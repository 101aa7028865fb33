"""Finding small theta_r-models, and the two trichotomy drivers."""

from __future__ import annotations

from functools import lru_cache
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .decomposition import (
    DistanceDecomposition,
    InvariantError,
    bounded_escape_path,
    distance_decomposition,
)
from .graph import (
    GraphError,
    MinorModelCertificate,
    Multigraph,
    ThetaCertificate,
    bfs_tree,
    is_connected,
    quotient_degrees,
    spanning_tree_edges,
    verify_minor_model,
    verify_theta_certificate,
)
from .oracles import size_guard
from .partitioner import (
    GroupedPartition,
    frontier_report,
    grouped_partition,
    root_stem,
    singleton_partition,
    unimportant_paths,
)
from .protrusion import (
    ProtrusionCertificate,
    fold_dd_path,
    fold_unimportant_path,
    subtree_protrusion,
    verify_protrusion,
)


# ---------------------------------------------------------------- outcomes


@dataclass(frozen=True)
class Theta:
    certificate: ThetaCertificate
    stage: str
    kind: str = "theta"


@dataclass(frozen=True)
class LowDegree:
    vertex: int
    degree: int
    kind: str = "low_degree_vertex"


@dataclass(frozen=True)
class Protrusion:
    certificate: ProtrusionCertificate
    stage: str
    kind: str = "protrusion"


@dataclass(frozen=True)
class Minor:
    certificate: MinorModelCertificate
    bound: int
    stage: str
    kind: str = "minor_model"

    @property
    def bound_met(self) -> bool:
        return self.certificate.claimed_min_degree >= self.bound


# ---------------------------------------------------------------- bounds


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def theorem5_bound(r: int, w: int, z: int) -> int:
    """ceil(2^((z-5r)/(4r(2w+1))) / (r-1)), or 0 when that quantity is below 1.

    Exact: 2^(p/q) >= (r-1)*x  <=>  2^p >= ((r-1)*x)^q for integers x >= 1.
    """
    p, q = z - 5 * r, 4 * r * (2 * w + 1)
    if p < 0 and r >= 2:
        return 0

    def at_least(x):
        lhs = (r - 1) * x
        return p >= 0 and 2 ** p >= lhs ** q

    if not at_least(1):
        return 0
    lo = 1
    while at_least(lo * 2):
        lo *= 2
    hi = lo * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if at_least(mid):
            lo = mid
        else:
            hi = mid
    # lo = floor of the value; ceil unless the value is an integer
    return lo if (r - 1) ** q * lo ** q == 2 ** p else lo + 1


def theorem4_bound(r: int, delta: int, z: int) -> int:
    """ceil((delta-2r+3)/(r-1) * (floor(delta/(r-1)) - 1)^d) with d = (z-r)//(4r)."""
    d = (z - r) // (4 * r)
    base = delta // (r - 1) - 1
    return _ceil_div((delta - 2 * r + 3) * base ** d, r - 1)


# ---------------------------------------------------------------- finders


def _root_path(pv, pe, x):
    verts, eids = [x], []
    while pv[x] != -1:
        eids.append(pe[x])
        x = pv[x]
        verts.append(x)
    return verts, eids


def theta_at_node(g: Multigraph, dd: DistanceDecomposition, t: int, r: int) -> Optional[ThetaCertificate]:
    """Grow U inside bag ``t`` by escape paths until r parent edges touch U."""
    if t == 0 or len(dd.parent_edges[t]) < r:
        return None
    bag = dd.bags[t]
    U = {bag[0]}
    branch_a = {bag[0]}
    pedges = dd.parent_edges[t]

    def touching():
        return [e for e in pedges if g.edges[e][0] in U or g.edges[e][1] in U]

    while len(touching()) < r:
        verts, _ = bounded_escape_path(dd, t, U)
        U.add(verts[-1])
        branch_a.update(verts)
    cross = touching()[:r]
    inside = set(bag)
    upper = [g.edges[e][0] if g.edges[e][1] in inside else g.edges[e][1] for e in cross]
    _, pv, pe = bfs_tree(g, dd.origin, dd.scope)
    branch_b, tree_b = set(), set()
    for x in upper:
        verts, eids = _root_path(pv, pe, x)
        branch_b.update(verts)
        tree_b.update(eids)
    cert = ThetaCertificate.build(branch_a, branch_b, spanning_tree_edges(g, branch_a), tree_b, cross, r)
    budget = 2 * r * dd.height
    if dd.height >= 1 and cert.total_edges > budget:
        raise InvariantError(f"heavy-node certificate has {cert.total_edges} > 2rd = {budget} edges")
    return cert


def theta_from_heavy_node(g: Multigraph, dd: DistanceDecomposition, r: int) -> Optional[ThetaCertificate]:
    """First node (BFS order) with |E^(t)| >= r yields a certificate; None means
    every non-root node has at most r-1 parent edges."""
    for t in range(1, len(dd)):
        if len(dd.parent_edges[t]) >= r:
            return theta_at_node(g, dd, t, r)
    return None


def theta_from_big_bag(g: Multigraph, dd: DistanceDecomposition, r: int) -> Optional[ThetaCertificate]:
    """A bag with at least r vertices has at least r parent edges."""
    for t in range(1, len(dd)):
        if len(dd.bags[t]) >= r:
            return theta_at_node(g, dd, t, r)
    return None


def cross_counts(g: Multigraph, gp: GroupedPartition) -> dict:
    counts = {}
    for u, v in g.edges:
        a, b = gp.owner[u], gp.owner[v]
        if a != b:
            key = (a, b) if a < b else (b, a)
            counts[key] = counts.get(key, 0) + 1
    return counts


def theta_from_region_pair(g: Multigraph, gp: GroupedPartition, i: int, j: int, r: int) -> Optional[ThetaCertificate]:
    """r cross edges between regions i and j, closed up by center paths."""
    if i == j:
        raise GraphError("region pair needs two distinct regions")
    ri, rj = set(gp.regions[i]), set(gp.regions[j])
    cross = [e for e, (u, v) in enumerate(g.edges) if (u in ri and v in rj) or (u in rj and v in ri)]
    if len(cross) < r:
        return None
    cross = cross[:r]
    sides = []
    for region, center in ((ri, gp.centers[i]), (rj, gp.centers[j])):
        _, pv, pe = bfs_tree(g, center, region)
        verts, eids = set(), set()
        for e in cross:
            u, v = g.edges[e]
            x = u if u in region else v
            pverts, peids = _root_path(pv, pe, x)
            verts.update(pverts)
            eids.update(peids)
        sides.append((verts, eids))
    cert = ThetaCertificate.build(sides[0][0], sides[1][0], sides[0][1], sides[1][1], cross, r)
    budget = 4 * r * gp.radius + r
    if cert.total_edges > budget:
        raise InvariantError(f"region-pair certificate has {cert.total_edges} > 4rd+r = {budget} edges")
    return cert


def first_region_pair(g: Multigraph, gp: GroupedPartition, r: int) -> Optional[ThetaCertificate]:
    hits = sorted(k for k, c in cross_counts(g, gp).items() if c >= r)
    if not hits:
        return None
    return theta_from_region_pair(g, gp, hits[0][0], hits[0][1], r)


def theta_from_bundle(g: Multigraph, r: int) -> Optional[ThetaCertificate]:
    """r parallel edges between one pair: the smallest possible model."""
    bundles = {}
    for e, (u, v) in enumerate(g.edges):
        bundles.setdefault((min(u, v), max(u, v)), []).append(e)
    for (u, v), eids in sorted(bundles.items()):
        if len(eids) >= r:
            return ThetaCertificate.build((u,), (v,), (), (), eids[:r], r)
    return None


def shortest_cycle(g: Multigraph):
    """A shortest cycle as ``(vertices, edge_ids)``, or None for forests.

    A parallel pair counts as a cycle of length 2.
    """
    best = None
    for root in range(g.n):
        dist, pv, pe = bfs_tree(g, root)
        for e, (u, v) in enumerate(g.edges):
            if u not in dist or v not in dist or pe[u] == e or pe[v] == e:
                continue
            length = dist[u] + dist[v] + 1
            if best is None or length < best[0]:
                best = (length, root, e)
    if best is None:
        return None
    _, root, e = best
    dist, pv, pe = bfs_tree(g, root)
    u, v = g.edges[e]
    pu, eu = _root_path(pv, pe, u)
    pw, ew = _root_path(pv, pe, v)
    # trim the shared part above the lowest common ancestor
    while len(pu) > 1 and len(pw) > 1 and pu[-2] == pw[-2]:
        pu.pop(); eu.pop(); pw.pop(); ew.pop()
    verts = pu + pw[-2::-1]
    eids = eu + ew[::-1] + [e]
    return verts, eids


def theta_from_cycle(g: Multigraph, cycle) -> ThetaCertificate:
    verts, eids = cycle
    # verts[0] = u, ..., lca, ..., v; closing edge eids[-1] joins v and u
    a = {verts[0]}
    b = set(verts[1:])
    cross = [eids[0], eids[-1]]
    tree_b = eids[1:-1]
    return ThetaCertificate.build(a, b, (), tree_b, cross, 2)


def exact_theta(g: Multigraph, r: int, limit: int = -1) -> Optional[ThetaCertificate]:
    """Minimum theta_r-model via the bitmask kernel (exponential; small graphs)."""
    n = g.n
    nbr = [0] * n
    mult = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
        mult[u][v] += 1
        mult[v][u] += 1
    if n <= _kernels.COMPILED_MAX_N:
        total, a, b = _kernels.theta_search(n, nbr, mult, r, limit)
    else:
        total, a, b = _kernels.theta_search_any(n, nbr, mult, r, limit)
    if total < 0:
        return None
    av = [v for v in range(n) if a >> v & 1]
    bv = [v for v in range(n) if b >> v & 1]
    from .graph import theta_from_branch_sets

    return theta_from_branch_sets(g, av, bv, r)


def direct_search(g: Multigraph, r: int, z: int) -> Optional[ThetaCertificate]:
    """Bounded search for a model with at most z edges when the radius is tiny."""
    c = theta_from_bundle(g, r)
    if c is not None:
        return c
    if r == 2:
        cyc = shortest_cycle(g)
        if cyc is not None and len(cyc[1]) <= z:
            return theta_from_cycle(g, cyc)
        return None
    if g.n <= size_guard():
        return exact_theta(g, r, z)
    return local_heavy_node(g, r, z)


def local_heavy_node(g: Multigraph, r: int, z: int) -> Optional[ThetaCertificate]:
    """Heavy-node certificates from whole-graph decompositions at every origin."""
    best = _smallest_heavy_node(g, r)
    return best if best is not None and best.total_edges <= z else None


@lru_cache(maxsize=64)
def _smallest_heavy_node(g: Multigraph, r: int) -> Optional[ThetaCertificate]:
    # independent of z, and drivers call it for many z on one graph
    best = None
    for v in range(g.n):
        dd = distance_decomposition(g, v)
        for t in range(1, len(dd)):
            if len(dd.parent_edges[t]) >= r:
                c = theta_at_node(g, dd, t, r)
                if best is None or c.total_edges < best.total_edges:
                    best = c
    return best


# ---------------------------------------------------------------- minors


def _minor(g: Multigraph, parts):
    parts = [tuple(sorted(p)) for p in parts]
    delta = min(quotient_degrees(g, parts)) if len(parts) > 1 else 0
    return MinorModelCertificate(tuple(parts), delta)


def peel_partition(g: Multigraph):
    """Merge vertices of quotient degree at most one into a neighbor until none remain."""
    members = {v: {v} for v in range(g.n)}
    nb = {v: set(g.neighbors(v)) for v in range(g.n)}
    queue = sorted(v for v in nb if len(nb[v]) <= 1)
    while queue and len(members) > 1:
        x = queue.pop(0)
        if x not in members or len(nb[x]) > 1:
            continue
        if not nb[x]:
            continue
        (y,) = nb[x]
        members[y] |= members.pop(x)
        nb[y].discard(x)
        del nb[x]
        if len(nb[y]) <= 1:
            queue.append(y)
    return [sorted(m) for _, m in sorted(members.items())]


def merge_leaf_regions(g: Multigraph, regions):
    """Absorb regions of quotient degree one into their neighbor, repeatedly."""
    regions = [set(r) for r in regions]
    while len(regions) > 1:
        degs = quotient_degrees(g, regions)
        leaf = next((i for i, dg in enumerate(degs) if dg <= 1), None)
        if leaf is None:
            break
        owner = {v: i for i, reg in enumerate(regions) for v in reg}
        nbr = min(owner[u] for v in regions[leaf] for u in g.neighbors(v) if owner[u] != leaf)
        regions[nbr] |= regions[leaf]
        del regions[leaf]
    return [sorted(r) for r in regions]


# ---------------------------------------------------------------- protrusion search


def region_fold_paths(g: Multigraph, gp: GroupedPartition, i: int):
    """Unimportant paths of region ``i``, then its root stem when that is a proper path."""
    rep = frontier_report(g, gp, i)
    parent = list(gp.region_dds[i].parent)
    paths = unimportant_paths(parent, rep.node_frontier)
    stem = root_stem(parent, rep.node_frontier)
    if len(stem) >= 2:
        paths.append(stem)
    return paths


def search_protrusion(g: Multigraph, r: int, w: int) -> Optional[ProtrusionCertificate]:
    """Protrusions from whole-graph decompositions: subtrees first, then folded chains."""
    limit = 2 * r - 2
    for v in range(g.n):
        dd = distance_decomposition(g, v)
        for t in range(1, len(dd)):
            sub = dd.descendants(t)
            if len(sub) + 1 <= w:
                continue
            if any(len(dd.parent_edges[x]) > limit or len(dd.bags[x]) > limit for x in sub):
                continue
            c = subtree_protrusion(g, dd, t, r)
            if verify_protrusion(g, c, limit, w)[0]:
                return c
    for v in range(g.n):
        dd = distance_decomposition(g, v)
        light = [len(dd.parent_edges[t]) <= r - 1 for t in range(len(dd))]
        for tp in range(1, len(dd)):
            chain = [tp]
            x = tp
            while dd.parent[x] != -1 and light[x]:
                x = dd.parent[x]
                chain.append(x)
            chain.reverse()
            if len(chain) >= 3:
                c = fold_dd_path(g, dd, chain, r, w)
                if verify_protrusion(g, c, limit, w)[0]:
                    return c
    return None


# ---------------------------------------------------------------- drivers


def _check_params(g, r):
    if r < 2:
        raise GraphError(f"r must be at least 2, got {r}")
    if g.n == 0 or not is_connected(g):
        raise GraphError("the graph must be connected and nonempty")


def _radius_partition(g, d):
    if d >= 1:
        return grouped_partition(g, d)
    return singleton_partition(g)


def run_theorem5(g: Multigraph, r: int, w: int, z: int, fallbacks: bool = True):
    """Theta (at most z edges), Protrusion (width <= 2r-2, extension > w) or Minor."""
    _check_params(g, r)
    if w < 0:
        raise GraphError(f"w must be nonnegative, got {w}")
    if not r < z <= g.m:
        raise GraphError(f"need r < z <= m, got r={r}, z={z}, m={g.m}")
    bound = theorem5_bound(r, w, z)
    c = theta_from_bundle(g, r)
    if c is not None:
        return Theta(c, "bundle")
    d = (z - r) // (4 * r)
    if d <= 1:
        c = direct_search(g, r, z)
        if c is not None:
            return Theta(c, "direct")
    gp = _radius_partition(g, d)
    c = first_region_pair(g, gp, r)
    if c is not None:
        return Theta(c, "region_pair")
    for dd in gp.region_dds:
        c = theta_from_heavy_node(g, dd, r)
        if c is not None:
            if c.total_edges > z:
                raise InvariantError("heavy-node certificate exceeds z")
            return Theta(c, "heavy_node")
    if d >= 1:
        for i in range(len(gp)):
            for path in region_fold_paths(g, gp, i):
                if len(path) - 1 >= 2 * (w + 1):
                    return Protrusion(fold_unimportant_path(g, gp, i, path, r, w), "fold")
    m = _minor(g, gp.regions)
    if m.claimed_min_degree >= bound or not fallbacks:
        return Minor(m, bound, "regions")
    return _theorem5_fallback(g, r, w, z, bound, gp, m)


def _theorem5_fallback(g, r, w, z, bound, gp, best):
    if r == 2:
        cyc = shortest_cycle(g)
        if cyc is not None and len(cyc[1]) <= z:
            return Theta(theta_from_cycle(g, cyc), "shortest_cycle")
    elif g.n <= size_guard():
        c = exact_theta(g, r, z)
        if c is not None:
            return Theta(c, "exact")
    else:
        c = local_heavy_node(g, r, z)
        if c is not None:
            return Theta(c, "local_heavy_node")
    c = search_protrusion(g, r, w)
    if c is not None:
        return Protrusion(c, "search")
    for parts in (merge_leaf_regions(g, gp.regions), peel_partition(g), [[v] for v in range(g.n)]):
        m = _minor(g, parts)
        if m.claimed_min_degree > best.claimed_min_degree:
            best = m
        if best.claimed_min_degree >= bound:
            break
    return Minor(best, bound, "fallback")


def run_theorem4(g: Multigraph, r: int, delta: int, z: int):
    """LowDegree vertex, Theta (at most z edges) or Minor with the degree bound recorded."""
    _check_params(g, r)
    if delta < 3 * r:
        raise GraphError(f"delta must be at least 3r = {3 * r}, got {delta}")
    if z < r:
        raise GraphError(f"z must be at least r = {r}, got {z}")
    for v in range(g.n):
        if g.degree(v) < delta:
            return LowDegree(v, g.degree(v))
    bound = theorem4_bound(r, delta, z)
    c = theta_from_bundle(g, r)
    if c is not None:
        return Theta(c, "bundle")
    d = (z - r) // (4 * r)
    if d <= 1:
        c = direct_search(g, r, z)
        if c is not None:
            return Theta(c, "direct")
    gp = _radius_partition(g, d)
    c = first_region_pair(g, gp, r)
    if c is not None:
        return Theta(c, "region_pair")
    for dd in gp.region_dds:
        c = theta_from_big_bag(g, dd, r)
        if c is None:
            c = theta_from_heavy_node(g, dd, r)
        if c is not None:
            if c.total_edges > z:
                raise InvariantError("decomposition certificate exceeds z")
            return Theta(c, "big_bag")
    return Minor(_minor(g, gp.regions), bound, "regions")


def verify_outcome(g: Multigraph, outcome, r: int, z: int, w: Optional[int] = None):
    """Verifier dispatch. Returns ``(ok, violations)``."""
    if outcome.kind == "theta":
        return verify_theta_certificate(g, outcome.certificate, r, z)
    if outcome.kind == "protrusion":
        return verify_protrusion(g, outcome.certificate, 2 * r - 2, w if w is not None else 0)
    if outcome.kind == "minor_model":
        ok, actual = verify_minor_model(g, outcome.certificate)
        return ok, ([] if ok else [f"quotient minimum degree {actual} below claim"])
    if outcome.kind == "low_degree_vertex":
        return True, []
    return False, [f"unknown outcome kind {outcome.kind}"]
