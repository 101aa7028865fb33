"""Deterministic graph families and seeded random models."""

from __future__ import annotations

from .graph import GraphError, Multigraph
from .rng import Rng

MODELS = ("path", "cycle", "clique", "theta", "grid", "random-regular", "random-multigraph")


def path_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Multigraph:
    return Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def theta_graph(r: int) -> Multigraph:
    """Two vertices joined by r parallel edges."""
    if r < 1:
        raise GraphError("r must be positive")
    return Multigraph(2, [(0, 1)] * r)


def grid(rows: int, cols: int) -> Multigraph:
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Multigraph(rows * cols, edges)


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, outer + spokes + inner)


def random_regular(n: int, d: int, seed: int, max_restarts: int = 1000) -> Multigraph:
    """Simple d-regular graph from the pairing model.

    Points are paired one pair at a time; a pair that would create a loop or a
    repeated edge is rejected and redrawn. If no legal pair is left the whole
    pairing restarts.
    """
    if n < 1 or d < 0 or d >= n:
        raise GraphError(f"no simple {d}-regular graph on {n} vertices")
    if (n * d) % 2:
        raise GraphError(f"n*d = {n * d} is odd")
    rng = Rng(seed)
    for _ in range(max_restarts):
        edges = _pairing_attempt(n, d, rng)
        if edges is not None:
            return Multigraph(n, sorted(edges))
    raise GraphError("pairing model failed to produce a simple graph")


def _pairing_attempt(n, d, rng):
    points = [v for v in range(n) for _ in range(d)]
    present = set()
    edges = []
    while points:
        for _ in range(50):
            i = rng.below(len(points))
            j = rng.below(len(points))
            u, v = points[i], points[j]
            if i != j and u != v and (min(u, v), max(u, v)) not in present:
                break
        else:
            legal = any(
                points[a] != points[b] and (min(points[a], points[b]), max(points[a], points[b])) not in present
                for a in range(len(points))
                for b in range(a + 1, len(points))
            )
            if not legal:
                return None
            continue
        present.add((min(u, v), max(u, v)))
        edges.append((min(u, v), max(u, v)))
        for idx in sorted((i, j), reverse=True):
            points[idx] = points[-1]
            points.pop()
    return edges


def random_multigraph(n: int, m: int, seed: int) -> Multigraph:
    """Connected loopless multigraph: a random recursive tree plus random extra edges
    (parallels allowed)."""
    if n < 1:
        raise GraphError("need at least one vertex")
    if m < n - 1:
        raise GraphError(f"{m} edges cannot connect {n} vertices")
    if n == 1 and m > 0:
        raise GraphError("a single vertex admits no loopless edges")
    rng = Rng(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = []
    for i in range(1, n):
        u, v = order[i], order[rng.below(i)]
        edges.append((min(u, v), max(u, v)))
    while len(edges) < m:
        u, v = rng.below(n), rng.below(n)
        if u != v:
            edges.append((min(u, v), max(u, v)))
    return Multigraph(n, edges)


def random_connected_simple(n: int, extra: int, seed: int) -> Multigraph:
    """Random recursive tree plus up to ``extra`` further distinct edges."""
    rng = Rng(seed)
    order = list(range(n))
    rng.shuffle(order)
    present = set()
    for i in range(1, n):
        u, v = order[i], order[rng.below(i)]
        present.add((min(u, v), max(u, v)))
    room = n * (n - 1) // 2 - len(present)
    target = len(present) + min(extra, room)
    while len(present) < target:
        u, v = rng.below(n), rng.below(n)
        if u != v:
            present.add((min(u, v), max(u, v)))
    return Multigraph(n, sorted(present))


def generate(model: str, n=None, d=None, m=None, r=None, seed=None) -> Multigraph:
    def need(name, value):
        if value is None:
            raise GraphError(f"model {model} needs {name}")
        return value

    if model == "path":
        return path_graph(need("-n", n))
    if model == "cycle":
        return cycle_graph(need("-n", n))
    if model == "clique":
        return clique(need("-n", n))
    if model == "theta":
        return theta_graph(need("--r", r))
    if model == "grid":
        return grid(need("-n", n), need("-m", m))
    if model == "random-regular":
        return random_regular(need("-n", n), need("-d", d), need("--seed", seed))
    if model == "random-multigraph":
        return random_multigraph(need("-n", n), need("-m", m), need("--seed", seed))
    raise GraphError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
