"""Vertex-disjoint theta_r-models in graphs of large minimum degree."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import GraphError, Multigraph, ThetaCertificate, verify_theta_certificate
from .rng import Rng


class PackingStall(GraphError):
    """Local search could not repair a deficient vertex without emptying a part."""


@dataclass(frozen=True)
class PackingCertificate:
    models: tuple
    part_assignment: tuple
    seed: int = 0
    restarts: int = 0

    def to_dict(self):
        from .certio import certificate_to_dict

        return {
            "kind": "packing",
            "models": [certificate_to_dict(c) for c in self.models],
            "part_assignment": list(self.part_assignment),
            "seed": self.seed,
            "restarts": self.restarts,
        }


def _nbrs(g: Multigraph, v, within):
    return [u for u in g.neighbors(v) if within is None or u in within]


def theta_by_maximal_path(g: Multigraph, r: int, within=None, start=None) -> ThetaCertificate:
    """Grow a maximal path by smallest-id extension; its last vertex closes r paths.

    Works inside ``g[within]`` when ``within`` is given.
    """
    vs = sorted(range(g.n) if within is None else within)
    if r < 1:
        raise GraphError("r must be positive")
    if not vs:
        raise GraphError("empty vertex set")
    low = min(len(_nbrs(g, v, within)) for v in vs)
    if low < r:
        raise GraphError(f"minimum degree {low} is below r={r}")
    v = vs[0] if start is None else start
    path, pos = [v], {v: 0}
    while True:
        nxt = next((u for u in _nbrs(g, path[-1], within) if u not in pos), None)
        if nxt is None:
            break
        pos[nxt] = len(path)
        path.append(nxt)
    end = path[-1]
    # r path-neighbors of the end closest to it along the path
    near = sorted(_nbrs(g, end, within), key=lambda u: -pos[u])[:r]
    first = min(pos[u] for u in near)
    branch_b = path[first:-1]
    tree_b = []
    for a, b in zip(branch_b, branch_b[1:]):
        tree_b.append(min(e for x, e in g.incident(a) if x == b))
    cross = [min(e for x, e in g.incident(end) if x == u) for u in near]
    return ThetaCertificate.build((end,), branch_b, (), tree_b, cross, r)


def _internal_degree(g, v, part, assign):
    return sum(1 for u in g.neighbors(v) if assign[u] == part)


def _potential(g, assign):
    return sum(
        1 for v in range(g.n) for u in g.neighbors(v) if u > v and assign[u] == assign[v]
    )


def _local_search(g, k, r, assign):
    sizes = [0] * k
    for p in assign:
        sizes[p] += 1
    potential = _potential(g, assign)
    moves = 0
    while True:
        moved = False
        deficient = [v for v in range(g.n) if _internal_degree(g, v, assign[v], assign) < r]
        if not deficient:
            return assign, moves
        for v in deficient:
            own = assign[v]
            if sizes[own] == 1:
                continue
            counts = [0] * k
            for u in g.neighbors(v):
                counts[assign[u]] += 1
            best = max((p for p in range(k) if p != own), key=lambda p: (counts[p], -p))
            if counts[best] <= counts[own]:
                continue
            assign[v] = best
            sizes[own] -= 1
            sizes[best] += 1
            new = potential - counts[own] + counts[best]
            if new <= potential:
                raise AssertionError("local search move did not increase the potential")
            potential = new
            moves += 1
            moved = True
            break
        if not moved:
            raise PackingStall("every deficient vertex is pinned by a singleton part")


def stiebitz_partition(g: Multigraph, k: int, r: int, seed: int = 0, max_restarts: int = 50):
    """Parts V_1..V_k with min internal (distinct-neighbor) degree >= r.

    Returns ``(assignment, restarts)``; ``assignment[v]`` is the part of v.
    """
    if k < 1 or r < 0:
        raise GraphError("need k >= 1 and r >= 0")
    need = k * (r + 1) - 1
    low = min((g.degree(v) for v in range(g.n)), default=0)
    if g.n == 0 or low < need:
        raise GraphError(f"minimum degree {low} is below k(r+1)-1 = {need}")
    if g.n < k:
        raise GraphError("fewer vertices than parts")
    rng = Rng(seed)
    assign = [v % k for v in range(g.n)]
    restarts = 0
    while True:
        try:
            assign, moves = _local_search(g, k, r, assign)
            break
        except PackingStall:
            restarts += 1
            if restarts > max_restarts:
                raise PackingStall(f"stalled after {max_restarts} restarts; try another --seed")
            order = list(range(g.n))
            rng.shuffle(order)
            assign = [0] * g.n
            for idx, v in enumerate(order):
                assign[v] = idx % k
    for p in range(k):
        members = [v for v in range(g.n) if assign[v] == p]
        if not members:
            raise AssertionError(f"part {p} is empty")
        if any(_internal_degree(g, v, p, assign) < r for v in members):
            raise AssertionError(f"part {p} has internal degree below r")
    return assign, restarts


def pack_k_theta(g: Multigraph, k: int, r: int, seed: int = 0) -> PackingCertificate:
    assign, restarts = stiebitz_partition(g, k, r, seed)
    models = []
    for p in range(k):
        part = {v for v in range(g.n) if assign[v] == p}
        models.append(theta_by_maximal_path(g, r, within=part))
    cert = PackingCertificate(tuple(models), tuple(assign), seed, restarts)
    ok, bad = verify_packing(g, cert, k, r)
    if not ok:
        raise AssertionError(f"packing failed its own check: {bad}")
    return cert


def verify_packing(g: Multigraph, c: PackingCertificate, k: int, r: int):
    bad = []
    if len(c.models) != k:
        bad.append(f"{len(c.models)} models, expected {k}")
    used = set()
    for i, m in enumerate(c.models):
        ok, why = verify_theta_certificate(g, m, r, g.m)
        if not ok:
            bad.append(f"model {i}: {'; '.join(why)}")
        vs = m.vertices()
        if used & vs:
            bad.append(f"model {i} shares vertices {sorted(used & vs)}")
        used |= vs
    return not bad, bad
