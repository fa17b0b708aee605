"""Graph families: projective-plane incidence graphs, Jung unions, blowups, baselines."""

from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction
from itertools import combinations, product

from .graph import Graph, average_degree

CONFIG_MODEL_RETRIES = 1000


class GenerationError(RuntimeError):
    pass


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q ** 0.5) + 1))


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    # normalised so the first nonzero coordinate is 1; lexicographic order
    pts = []
    for v in product(range(q), repeat=3):
        nz = next((x for x in v if x), None)
        if nz == 1:
            pts.append(v)
    return pts


def incidence_graph_pg2(q: int) -> Graph:
    """Point-line incidence graph of PG(2, q): points are 0..N-1, lines N..2N-1."""
    if not _is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    pts = _projective_points(q)
    N = len(pts)
    edges = [
        (i, N + j)
        for i, p in enumerate(pts)
        for j, l in enumerate(pts)
        if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0
    ]
    return Graph.from_edges(2 * N, edges)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def jung_union(d: int, copies: int) -> tuple[Graph, Fraction]:
    """Disjoint union of ``copies`` K_{d/2,d/2}; returns the graph and its average degree."""
    if d < 2 or d % 2 or copies < 1:
        raise ValueError("need even d >= 2 and copies >= 1")
    h = d // 2
    edges = []
    for c in range(copies):
        base = c * d
        edges.extend((base + i, base + h + j) for i in range(h) for j in range(h))
    G = Graph.from_edges(copies * d, edges)
    return G, average_degree(G)


def _pairing(n: int, r: int, rng: random.Random) -> set[tuple[int, int]] | None:
    # stub pairing that re-shuffles only the stubs that produced loops or repeats
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(r)]
    while stubs:
        leftover: dict[int, int] = defaultdict(int)
        rng.shuffle(stubs)
        it = iter(stubs)
        for a, b in zip(it, it):
            a, b = min(a, b), max(a, b)
            if a != b and (a, b) not in edges:
                edges.add((a, b))
            else:
                leftover[a] += 1
                leftover[b] += 1
        if leftover and not any(
            (min(a, b), max(a, b)) not in edges
            for a, b in combinations(sorted(leftover), 2)
        ):
            return None
        stubs = [v for v, c in sorted(leftover.items()) for _ in range(c)]
    return edges


def random_regular(n: int, r: int, rng_seed: int = 0) -> Graph:
    if (n * r) % 2 or not 0 <= r < n:
        raise ValueError(f"no simple {r}-regular graph on {n} vertices")
    for attempt in range(CONFIG_MODEL_RETRIES):
        rng = random.Random(f"regular:{n}:{r}:{rng_seed}:{attempt}")
        edges = _pairing(n, r, rng)
        if edges is not None:
            return Graph.from_edges(n, sorted(edges))
    raise GenerationError(f"configuration model failed {CONFIG_MODEL_RETRIES} times for n={n}, r={r}")


def gnp(n: int, p: float, rng_seed: int = 0) -> Graph:
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(f"gnp:{n}:{p}:{rng_seed}")
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def counterexample_blowup(h: int, r: int, blowup: int, rng_seed: int = 0) -> Graph:
    """Random r-regular graph on h vertices with each vertex replaced by an independent ``blowup``-set.

    Class of original vertex x is ``range(x*blowup, (x+1)*blowup)``; each base edge
    becomes a complete bipartite join.
    """
    if (h * r) % 2 or not 0 < r < h or blowup < 1:
        raise ValueError("need h*r even, 0 < r < h and blowup >= 1")
    base = random_regular(h, r, rng_seed)
    edges = [
        (x * blowup + i, y * blowup + j)
        for x, y in base.edges()
        for i in range(blowup)
        for j in range(blowup)
    ]
    return Graph.from_edges(h * blowup, edges)


# ---------------------------------------------------------------- named graphs

def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def grid(rows: int, cols: int) -> Graph:
    def vid(r, c):
        return r * cols + c

    edges = [(vid(r, c), vid(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [(vid(r, c), vid(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return Graph.from_edges(rows * cols, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def hypercube(dim: int) -> Graph:
    n = 1 << dim
    return Graph.from_edges(n, ((v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)))


def wheel(rim: int) -> Graph:
    return Graph.from_edges(rim + 1, [(0, i) for i in range(1, rim + 1)]
                            + [(i, i % rim + 1) for i in range(1, rim + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.n
    return Graph.from_edges(off, edges)


def complete_ary_tree(arity: int, depth: int) -> Graph:
    edges, frontier, nxt_id = [], [0], 1
    for _ in range(depth):
        new = []
        for v in frontier:
            for _ in range(arity):
                edges.append((v, nxt_id))
                new.append(nxt_id)
                nxt_id += 1
        frontier = new
    return Graph.from_edges(nxt_id, edges)
