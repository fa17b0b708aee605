"""Immutable simple graphs on dense integer ids, plus the neighbourhood operators.

Every constructor in the package restricts to subgraphs over and over, so
`induced` and `delete_vertices` return a translation table (``new id -> old id``)
alongside the subgraph.  Paths found in a subgraph are mapped back with
`lift_path`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class GraphInputError(ValueError):
    """Malformed graph data or a vertex id outside ``[0, n)``."""


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    nbrs: tuple[tuple[int, ...], ...]
    adj: tuple[frozenset[int], ...] = field(repr=False)
    edge_count: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphInputError(f"negative vertex count {n}")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"self-loop at {u}")
            sets[u].add(v)
            sets[v].add(u)
        nbrs = tuple(tuple(sorted(s)) for s in sets)
        m = sum(len(s) for s in sets) // 2
        return cls(n, nbrs, tuple(frozenset(s) for s in sets), m)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, ())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.nbrs == other.nbrs

    def __hash__(self) -> int:
        return hash((self.n, self.nbrs))

    def __len__(self) -> int:
        return self.n

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.nbrs[u] if u < v]

    def min_degree(self) -> int:
        return min((len(a) for a in self.nbrs), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.nbrs), default=0)

    def check(self, vs: Iterable[int]) -> frozenset[int]:
        out = frozenset(vs)
        for v in out:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise GraphInputError(f"vertex {v!r} not in graph with n={self.n}")
        return out


def average_degree(G: Graph) -> Fraction:
    if G.n == 0:
        return Fraction(0)
    return Fraction(2 * G.edge_count, G.n)


def external_neighborhood(G: Graph, X: Iterable[int]) -> frozenset[int]:
    X = G.check(X)
    out: set[int] = set()
    for v in X:
        out.update(G.adj[v])
    return frozenset(out - X)


def ball(G: Graph, X: Iterable[int], r: int, avoid: Iterable[int] = ()) -> frozenset[int]:
    """All vertices within distance ``r`` of ``X`` in ``G - avoid``; ``X`` itself included.

    Members of ``X`` lying in ``avoid`` are dropped before the search starts.
    """
    if r < 0:
        raise ValueError("radius must be non-negative")
    blocked = frozenset(avoid)
    seen = set(G.check(X)) - blocked
    frontier = list(seen)
    for _ in range(r):
        nxt = []
        for v in frontier:
            for u in G.nbrs[v]:
                if u not in seen and u not in blocked:
                    seen.add(u)
                    nxt.append(u)
        if not nxt:
            break
        frontier = nxt
    return frozenset(seen)


def iterated_neighborhood(G: Graph, X: Iterable[int], i: int) -> frozenset[int]:
    # literal recursion N^{i+1}(X) = N(N^i(X)); not the distance-i sphere
    if i < 1:
        raise ValueError("iteration count must be >= 1")
    cur = external_neighborhood(G, X)
    for _ in range(i - 1):
        cur = external_neighborhood(G, cur)
    return cur


def bfs_distances(G: Graph, sources: Iterable[int], avoid: Iterable[int] = ()) -> dict[int, int]:
    blocked = frozenset(avoid)
    dist = {s: 0 for s in sorted(set(sources)) if s not in blocked}
    q = deque(dist)
    while q:
        v = q.popleft()
        for u in G.nbrs[v]:
            if u not in dist and u not in blocked:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def components(G: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    allowed = set(range(G.n)) if within is None else set(within)
    out = []
    for s in sorted(allowed):
        if s not in allowed:
            continue
        comp = [s]
        allowed.discard(s)
        q = deque([s])
        while q:
            v = q.popleft()
            for u in G.nbrs[v]:
                if u in allowed:
                    allowed.discard(u)
                    comp.append(u)
                    q.append(u)
        out.append(sorted(comp))
    return out


def two_coloring(G: Graph) -> list[int] | None:
    """BFS 2-colouring, lowest id of each component gets colour 0; None if odd cycle."""
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for u in G.nbrs[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    q.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def is_bipartite(G: Graph) -> bool:
    return two_coloring(G) is not None


def bipartite_half(G: Graph) -> tuple[Graph, tuple[frozenset[int], frozenset[int]]]:
    """Spanning bipartite subgraph keeping at least half of the edges.

    Local-search max-cut started from a BFS colouring (so bipartite input is
    returned whole).  A vertex flips while more than half its edges stay inside
    its own side; each flip strictly grows the cut, so this terminates, and at
    the fixpoint every vertex keeps at least half its degree across the cut.
    """
    side = [0] * G.n
    q: deque[int] = deque()
    seen = [False] * G.n
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        q.append(s)
        while q:
            v = q.popleft()
            for u in G.nbrs[v]:
                if not seen[u]:
                    seen[u] = True
                    side[u] = 1 - side[v]
                    q.append(u)
    changed = True
    while changed:
        changed = False
        for v in range(G.n):
            same = sum(1 for u in G.nbrs[v] if side[u] == side[v])
            if 2 * same > G.degree(v):
                side[v] = 1 - side[v]
                changed = True
    H = Graph.from_edges(G.n, ((u, v) for u, v in G.edges() if side[u] != side[v]))
    A = frozenset(v for v in range(G.n) if side[v] == 0)
    return H, (A, frozenset(range(G.n)) - A)


def induced(G: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``keep`` with ids renumbered in increasing order.

    Returns the subgraph and ``old_ids`` with ``old_ids[new] == old``.
    """
    old_ids = tuple(sorted(G.check(keep)))
    new_id = {v: i for i, v in enumerate(old_ids)}
    edges = [(new_id[u], new_id[v]) for u in old_ids for v in G.nbrs[u] if u < v and v in new_id]
    return Graph.from_edges(len(old_ids), edges), old_ids


def delete_vertices(G: Graph, W: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    W = G.check(W)
    return induced(G, (v for v in range(G.n) if v not in W))


def lift_path(path: Sequence[int], old_ids: Sequence[int]) -> tuple[int, ...]:
    return tuple(old_ids[v] for v in path)


def is_path(G: Graph, path: Sequence[int]) -> bool:
    if not path or len(set(path)) != len(path):
        return False
    if any(not (0 <= v < G.n) for v in path):
        return False
    return all(G.has_edge(a, b) for a, b in zip(path, path[1:]))


# ---------------------------------------------------------------- edge lists

def parse_edge_list(text: str) -> Graph:
    """First non-comment line ``n m``, then ``m`` lines ``u v`` (0-based)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphInputError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphInputError(f"line {lineno}: non-integer token in {line!r}") from None
    if not rows:
        raise GraphInputError("missing header line 'n m'")
    (n, m), edges = rows[0], rows[1:]
    if len(edges) != m:
        raise GraphInputError(f"header declares {m} edges, found {len(edges)}")
    seen = set()
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphInputError(f"parallel edge {key}")
        seen.add(key)
    return Graph.from_edges(n, edges)


def format_edge_list(G: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{G.n} {G.edge_count}")
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(G: Graph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(G, comment))
