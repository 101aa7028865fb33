"""Multigraph container, edge-list IO, contraction and certificate checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LoopError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class PartitionError(GraphError):
    pass


class Multigraph:
    """Undirected loopless multigraph on vertices ``0..n-1``.

    Edge ``i`` is ``edges[i]``; parallel edges are separate records. Instances
    are treated as immutable.
    """

    __slots__ = ("n", "edges", "_inc", "_nbrs", "_csr_lists", "_csr_arrays")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        self.n = int(n)
        recs = []
        inc = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {eid} ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise LoopError(f"edge {eid} is a loop at vertex {u}")
            recs.append((u, v))
            inc[u].append((v, eid))
            inc[v].append((u, eid))
        self.edges = tuple(recs)
        self._inc = tuple(tuple(x) for x in inc)
        self._nbrs = tuple(tuple(sorted({w for w, _ in x})) for x in inc)
        self._csr_lists = None
        self._csr_arrays = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self):
        return range(self.n)

    def incident(self, v: int):
        """``(neighbor, edge_id)`` pairs in edge-id order."""
        return self._inc[v]

    def neighbors(self, v: int):
        """Distinct neighbors in ascending order."""
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def incident_count(self, v: int) -> int:
        return len(self._inc[v])

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for w, _ in self._inc[u] if w == v)

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if a == v else a

    def csr_lists(self):
        if self._csr_lists is None:
            indptr = [0]
            indices = []
            for v in range(self.n):
                indices.extend(self._nbrs[v])
                indptr.append(len(indices))
            self._csr_lists = (indptr, indices)
        return self._csr_lists

    def csr_arrays(self):
        if self._csr_arrays is None:
            indptr, indices = self.csr_lists()
            self._csr_arrays = (
                np.asarray(indptr, dtype=np.int32),
                np.asarray(indices if indices else [0], dtype=np.int32),
            )
        return self._csr_arrays

    def __eq__(self, other):
        return isinstance(other, Multigraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"


def from_edge_list(text) -> Multigraph:
    """Parse the edge-list format: a vertex count, then one ``u v`` line per edge.

    Lines starting with ``#`` and blank lines are skipped. Repeated pairs give
    parallel edges; ``u == v`` is rejected.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not ASCII text ({exc})") from None
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise ParseError(f"expected vertex count, got {raw!r}", lineno)
            n = int(parts[0])
            continue
        if len(parts) != 2 or not (parts[0].isdigit() and parts[1].isdigit()):
            raise ParseError(f"expected 'u v', got {raw!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise ParseError(f"vertex id out of range 0..{n - 1}", lineno)
        if u == v:
            raise LoopError(f"line {lineno}: loop at vertex {u}")
        edges.append((u, v))
    if n is None:
        raise ParseError("missing vertex count")
    return Multigraph(n, edges)


def to_edge_list(g: Multigraph) -> str:
    out = [f"{g.n}\n"]
    out.extend(f"{u} {v}\n" for u, v in g.edges)
    return "".join(out)


def degree(g: Multigraph, v: int) -> int:
    """Number of distinct neighbors of ``v``."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in graph")
    return g.degree(v)


def min_degree(g: Multigraph) -> int:
    return min((g.degree(v) for v in range(g.n)), default=0)


def bfs_tree(g: Multigraph, root: int, within=None):
    """BFS from ``root`` inside ``within`` (a set, or None for all vertices).

    Returns ``(dist, parent_vertex, parent_edge)`` dicts. Neighbors are scanned
    in ascending id and the smallest edge id is used for each tree edge.
    """
    dist = {root: 0}
    pv = {root: -1}
    pe = {root: -1}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        best = {}
        for w, eid in g.incident(v):
            if w not in best:
                best[w] = eid
        for w in sorted(best):
            if w in dist or (within is not None and w not in within):
                continue
            dist[w] = dist[v] + 1
            pv[w] = v
            pe[w] = best[w]
            queue.append(w)
    return dist, pv, pe


def is_connected(g: Multigraph, vertices=None) -> bool:
    vs = set(range(g.n)) if vertices is None else set(vertices)
    if not vs:
        return False
    dist, _, _ = bfs_tree(g, min(vs), vs)
    return len(dist) == len(vs)


def components(g: Multigraph, vertices=None):
    """Connected components of ``g[vertices]`` as sorted lists, ordered by minimum."""
    vs = set(range(g.n)) if vertices is None else set(vertices)
    out = []
    seen = set()
    for v in sorted(vs):
        if v in seen:
            continue
        dist, _, _ = bfs_tree(g, v, vs)
        seen.update(dist)
        out.append(sorted(dist))
    return out


def spanning_tree_edges(g: Multigraph, vertices) -> list[int]:
    """Edge ids of a BFS spanning tree of ``g[vertices]`` rooted at its minimum."""
    vs = set(vertices)
    root = min(vs)
    dist, _, pe = bfs_tree(g, root, vs)
    if len(dist) != len(vs):
        raise DisconnectedError(f"vertex set {sorted(vs)} does not induce a connected subgraph")
    return sorted(e for v, e in pe.items() if v != root)


def induced_edges(g: Multigraph, vertices) -> list[int]:
    vs = set(vertices)
    return [i for i, (u, v) in enumerate(g.edges) if u in vs and v in vs]


def contract_partition(g: Multigraph, parts) -> Multigraph:
    """Quotient multigraph: part ``i`` becomes vertex ``i``.

    Edges inside a part vanish; edges between parts are kept, parallels included,
    in original edge order.
    """
    owner = _owner_map(g, parts)
    for i, part in enumerate(parts):
        if not is_connected(g, part):
            raise PartitionError(f"part {i} {sorted(part)} is not connected")
    quotient = []
    for u, v in g.edges:
        a, b = owner[u], owner[v]
        if a != b:
            quotient.append((a, b))
    return Multigraph(len(parts), quotient)


def _owner_map(g: Multigraph, parts):
    owner = [-1] * g.n
    for i, part in enumerate(parts):
        if not part:
            raise PartitionError(f"part {i} is empty")
        for v in part:
            if not 0 <= v < g.n:
                raise PartitionError(f"part {i} contains unknown vertex {v}")
            if owner[v] != -1:
                raise PartitionError(f"vertex {v} appears in parts {owner[v]} and {i}")
            owner[v] = i
    missing = [v for v in range(g.n) if owner[v] == -1]
    if missing:
        raise PartitionError(f"vertices {missing[:10]} are not covered by any part")
    return owner


@dataclass(frozen=True)
class ThetaCertificate:
    """A theta_r-model: two connected branch sets joined by ``r`` cross edges."""

    branch_a: tuple
    branch_b: tuple
    tree_edges_a: tuple
    tree_edges_b: tuple
    cross_edges: tuple
    r: int
    total_edges: int

    @classmethod
    def build(cls, branch_a, branch_b, tree_edges_a, tree_edges_b, cross_edges, r):
        ta, tb, cx = tuple(sorted(tree_edges_a)), tuple(sorted(tree_edges_b)), tuple(sorted(cross_edges))
        return cls(
            tuple(sorted(branch_a)),
            tuple(sorted(branch_b)),
            ta,
            tb,
            cx,
            r,
            len(ta) + len(tb) + len(cx),
        )

    def vertices(self):
        return set(self.branch_a) | set(self.branch_b)

    def edge_ids(self):
        return set(self.tree_edges_a) | set(self.tree_edges_b) | set(self.cross_edges)


@dataclass(frozen=True)
class MinorModelCertificate:
    branch_sets: tuple
    claimed_min_degree: int


def theta_from_branch_sets(g: Multigraph, a, b, r: int) -> ThetaCertificate:
    """Certificate on two disjoint connected sets: BFS spanning trees plus the
    ``r`` lowest-id edges between them."""
    aset, bset = set(a), set(b)
    cross = [i for i, (u, v) in enumerate(g.edges) if (u in aset and v in bset) or (u in bset and v in aset)]
    if len(cross) < r:
        raise GraphError(f"only {len(cross)} edges join the branch sets, need {r}")
    return ThetaCertificate.build(
        aset, bset, spanning_tree_edges(g, aset), spanning_tree_edges(g, bset), cross[:r], r
    )


def verify_theta_certificate(g: Multigraph, c: ThetaCertificate, r: int, z: int):
    """Check a theta certificate against ``g``. Returns ``(ok, violations)``."""
    bad = []
    a, b = set(c.branch_a), set(c.branch_b)
    if not a or not b:
        bad.append("empty branch set")
    if a & b:
        bad.append(f"branch sets share vertices {sorted(a & b)}")
    if any(not 0 <= v < g.n for v in a | b):
        bad.append("branch set contains an unknown vertex")
        return False, bad
    groups = [("tree_edges_a", c.tree_edges_a), ("tree_edges_b", c.tree_edges_b), ("cross_edges", c.cross_edges)]
    for name, ids in groups:
        if len(set(ids)) != len(ids):
            bad.append(f"{name} repeats an edge id")
        if any(not 0 <= e < g.m for e in ids):
            bad.append(f"{name} contains an unknown edge id")
            return False, bad
    for i in range(3):
        for j in range(i + 1, 3):
            shared = set(groups[i][1]) & set(groups[j][1])
            if shared:
                bad.append(f"{groups[i][0]} and {groups[j][0]} share edges {sorted(shared)}")
    for name, ids, side in (("tree_edges_a", c.tree_edges_a, a), ("tree_edges_b", c.tree_edges_b, b)):
        if any(not set(g.edges[e]) <= side for e in ids):
            bad.append(f"{name} leaves its branch set")
        elif side and not _edges_connect(g, ids, side):
            bad.append(f"{name} does not connect its branch set")
    for e in c.cross_edges:
        u, v = g.edges[e]
        if not ((u in a and v in b) or (u in b and v in a)):
            bad.append(f"cross edge {e} ({u}, {v}) does not join the branch sets")
    if len(c.cross_edges) != c.r:
        bad.append(f"{len(c.cross_edges)} cross edges recorded for r={c.r}")
    if c.r != r:
        bad.append(f"certificate is for r={c.r}, expected r={r}")
    total = len(c.tree_edges_a) + len(c.tree_edges_b) + len(c.cross_edges)
    if c.total_edges != total:
        bad.append(f"total_edges={c.total_edges} but the edge sets hold {total}")
    if total > z:
        bad.append(f"{total} edges exceed the budget {z}")
    return not bad, bad


def _edges_connect(g, eids, vertices) -> bool:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in eids:
        u, v = g.edges[e]
        parent[find(u)] = find(v)
    return len({find(v) for v in vertices}) == 1


def quotient_degrees(g: Multigraph, parts) -> list[int]:
    owner = _owner_map(g, parts)
    nb = [set() for _ in parts]
    for u, v in g.edges:
        a, b = owner[u], owner[v]
        if a != b:
            nb[a].add(b)
            nb[b].add(a)
    return [len(x) for x in nb]


def verify_minor_model(g: Multigraph, c: MinorModelCertificate):
    """Returns ``(ok, actual_min_degree)``; actual is -1 when the partition is invalid."""
    try:
        _owner_map(g, c.branch_sets)
    except PartitionError:
        return False, -1
    if any(not is_connected(g, part) for part in c.branch_sets):
        return False, -1
    delta = min(quotient_degrees(g, c.branch_sets))
    return delta >= c.claimed_min_degree, delta
