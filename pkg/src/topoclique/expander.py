"""Sublinear expansion: the epsilon function, expansion checks, extraction, routing.

Logarithms are natural throughout; a different base only moves constants.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, average_degree, components, external_neighborhood, induced

EXACT_THRESHOLD = 18


class ExpansionSizeError(ValueError):
    """Exact expansion check requested on a graph above the exact-mode threshold."""


@dataclass(frozen=True)
class ExpanderParams:
    eps1: float
    k: float

    def __post_init__(self):
        if not 0 < self.eps1 < 1:
            raise ValueError(f"eps1 must lie in (0, 1), got {self.eps1}")
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k}")

    def size_range(self, n: int) -> tuple[int, int]:
        """Integer set sizes the expansion condition quantifies over."""
        return max(1, math.ceil(self.k / 2)), n // 2


@dataclass
class ExpansionReport:
    is_expander: bool
    witness: frozenset[int] | None
    mode: str  # "exact" | "sampled"
    eps1: float
    k: float
    vacuous: bool = False
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "is_expander": self.is_expander,
            "witness": sorted(self.witness) if self.witness is not None else None,
            "eps1": self.eps1,
            "k": self.k,
            "vacuous": self.vacuous,
            **({"notes": self.notes} if self.notes else {}),
        }


def _pair(params) -> tuple[float, float]:
    # formula helpers also take a bare (eps1, k) pair, so values outside the
    # expander range (eps1 >= 1) can still be evaluated
    if isinstance(params, ExpanderParams):
        return params.eps1, params.k
    eps1, k = params
    if eps1 <= 0 or k <= 0:
        raise ValueError("eps1 and k must be positive")
    return float(eps1), float(k)


def epsilon(x: float, params) -> float:
    eps1, k = _pair(params)
    if x <= 0:
        raise ValueError("x must be positive")
    if x < k / 5:
        return 0.0
    return eps1 / math.log(15 * x / k) ** 2


def diam_bound(n: int, params) -> float:
    eps1, k = _pair(params)
    if n < 1:
        raise ValueError("n must be >= 1")
    return (2 / eps1) * math.log(15 * n / k) ** 3


def ks_integral(params: ExpanderParams) -> float:
    """Closed form of the integral of epsilon(x)/x over [1, inf).

    Substituting u = log(15x/k) turns the integrand into eps1/u^2, so the
    integral is eps1/u0 with u0 taken at max(1, k/5).
    """
    lower = max(1.0, params.k / 5)
    return params.eps1 / math.log(15 * lower / params.k)


def violates(G: Graph, X: Iterable[int], params: ExpanderParams) -> bool:
    X = frozenset(X)
    lo, hi = params.size_range(G.n)
    if not lo <= len(X) <= hi:
        return False
    return len(external_neighborhood(G, X)) < epsilon(len(X), params) * len(X)


# ------------------------------------------------------------------ exact mode

def _exact_scan(G: Graph, k: float, lo: int, hi: int, eps1: float | None):
    """Enumerate every X with lo <= |X| <= hi by DFS in lexicographic order.

    Returns (first violating set per size, min over X of |N(X)| log^2(15|X|/k) / |X|).
    The second value is the largest eps1 at which G is an expander.
    """
    n = G.n
    masks = [0] * n
    for v in range(n):
        for u in G.nbrs[v]:
            masks[v] |= 1 << u
    logsq = [0.0] + [math.log(15 * s / k) ** 2 for s in range(1, hi + 1)]
    first: dict[int, tuple[int, ...]] = {}
    best = math.inf
    stack: list[int] = []

    def rec(start: int, xmask: int, nmask: int):
        nonlocal best
        size = len(stack)
        if size >= lo:
            boundary = (nmask & ~xmask).bit_count()
            ratio = boundary * logsq[size] / size
            if ratio < best:
                best = ratio
            if eps1 is not None and size not in first and boundary < eps1 / logsq[size] * size:
                first[size] = tuple(stack)
        if size == hi:
            return
        for v in range(start, n):
            stack.append(v)
            rec(v + 1, xmask | (1 << v), nmask | masks[v])
            stack.pop()

    rec(0, 0, 0)
    return first, best


def verify_expander_exact(G: Graph, params: ExpanderParams, threshold: int = EXACT_THRESHOLD) -> ExpansionReport:
    if G.n > threshold:
        raise ExpansionSizeError(
            f"exact expansion check refused for n={G.n} > {threshold}; use verify_expander_sampled"
        )
    lo, hi = params.size_range(G.n)
    if lo > hi:
        return ExpansionReport(True, None, "exact", params.eps1, params.k, vacuous=True)
    first, _ = _exact_scan(G, params.k, lo, hi, params.eps1)
    if not first:
        return ExpansionReport(True, None, "exact", params.eps1, params.k)
    return ExpansionReport(False, frozenset(first[min(first)]), "exact", params.eps1, params.k)


def best_certifiable_eps1(G: Graph, k: float, threshold: int = EXACT_THRESHOLD) -> float | None:
    """Largest eps1 for which G is an exact (eps1, k)-expander, or None if only 0 works.

    Vacuous graphs (no qualifying set) return infinity.
    """
    if G.n > threshold:
        raise ExpansionSizeError(f"n={G.n} above exact threshold {threshold}")
    lo, hi = max(1, math.ceil(k / 2)), G.n // 2
    if lo > hi:
        return math.inf
    _, best = _exact_scan(G, k, lo, hi, None)
    return best if best > 0 else None


# ---------------------------------------------------------------- sampled mode

class _Boundary:
    """Incremental |N(X)| under single-vertex insertions."""

    def __init__(self, G: Graph):
        self.G = G
        self.X: set[int] = set()
        self.hits: dict[int, int] = {}
        self.size = 0

    def add(self, v: int):
        if self.hits.get(v, 0) > 0:
            self.size -= 1
        self.X.add(v)
        for u in self.G.nbrs[v]:
            if u not in self.X:
                c = self.hits.get(u, 0)
                if c == 0:
                    self.size += 1
                self.hits[u] = c + 1


def _grow_and_test(G, order, params, lo, hi):
    b = _Boundary(G)
    for v in order:
        b.add(v)
        s = len(b.X)
        if s > hi:
            break
        if s >= lo and b.size < epsilon(s, params) * s:
            return frozenset(b.X)
    return None


def _bfs_order(G: Graph, seed: int, limit: int) -> list[int]:
    order, seen, q = [seed], {seed}, deque([seed])
    while q and len(order) < limit:
        v = q.popleft()
        for u in G.nbrs[v]:
            if u not in seen:
                seen.add(u)
                order.append(u)
                q.append(u)
    return order[:limit]


def _greedy_order(G: Graph, seed: int, limit: int) -> list[int]:
    # repeatedly absorb the outside vertex with most neighbours already inside
    inside = {seed}
    order = [seed]
    score: dict[int, int] = {}
    for u in G.nbrs[seed]:
        score[u] = score.get(u, 0) + 1
    while score and len(order) < limit:
        v = min(score, key=lambda u: (-score[u], u))
        del score[v]
        inside.add(v)
        order.append(v)
        for u in G.nbrs[v]:
            if u not in inside:
                score[u] = score.get(u, 0) + 1
    return order


def verify_expander_sampled(G: Graph, params: ExpanderParams, trials: int = 100, rng_seed: int = 0) -> ExpansionReport:
    """Heuristic search for a violating set; ``True`` only means none was found.

    Small components are checked first, then ``trials`` rounds cycling through
    BFS-grown prefixes, densest-first greedy growth, and uniform random subsets.
    Every reported witness is re-checked against the definition.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    lo, hi = params.size_range(G.n)
    if lo > hi:
        return ExpansionReport(True, None, "sampled", params.eps1, params.k, vacuous=True)

    for comp in components(G):
        if lo <= len(comp) <= hi:
            return ExpansionReport(False, frozenset(comp), "sampled", params.eps1, params.k)
    # a union of small components can violate too
    small = [c for c in components(G) if len(c) < lo]
    acc: list[int] = []
    for c in small:
        acc.extend(c)
        if lo <= len(acc) <= hi:
            return ExpansionReport(False, frozenset(acc), "sampled", params.eps1, params.k)

    rng = random.Random(rng_seed)
    verts = list(range(G.n))
    for trial in range(trials):
        kind = trial % 3
        if kind == 2:
            size = rng.randint(lo, hi)
            X = frozenset(rng.sample(verts, size))
            w = X if violates(G, X, params) else None
        else:
            seed = rng.randrange(G.n)
            order = _bfs_order(G, seed, hi) if kind == 0 else _greedy_order(G, seed, hi)
            w = _grow_and_test(G, order, params, lo, hi)
        if w is not None:
            assert violates(G, w, params)
            return ExpansionReport(False, w, "sampled", params.eps1, params.k, notes={"trial": trial})
    return ExpansionReport(True, None, "sampled", params.eps1, params.k, notes={"trials": trials})


def check_expansion(G: Graph, params: ExpanderParams, threshold: int = EXACT_THRESHOLD,
                    trials: int = 100, rng_seed: int = 0) -> ExpansionReport:
    if G.n <= threshold:
        return verify_expander_exact(G, params, threshold)
    return verify_expander_sampled(G, params, trials, rng_seed)


# ------------------------------------------------------------------ extraction

@dataclass
class ExtractionResult:
    graph: Graph
    old_ids: tuple[int, ...]  # old_ids[v] is v's id in the input graph
    certified: ExpanderParams | None  # the (eps1, k) last checked successfully
    mode: str
    report: ExpansionReport
    steps: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": self.graph.edge_count,
            "certified_eps1": self.certified.eps1 if self.certified else None,
            "k": self.report.k,
            "mode": self.mode,
            "report": self.report.to_json(),
            "steps": self.steps,
        }


def _strip_low_degree(G: Graph, ids: set[int]) -> set[int]:
    """Delete vertices of degree < d/2 until none remain; average degree never drops."""
    ids = set(ids)
    deg = {v: sum(1 for u in G.nbrs[v] if u in ids) for v in ids}
    m = sum(deg.values()) // 2
    while ids:
        n = len(ids)
        low = [v for v in ids if deg[v] * n < m]  # deg < (2m/n)/2
        if not low:
            break
        for v in low:
            ids.discard(v)
            for u in G.nbrs[v]:
                if u in ids:
                    deg[u] -= 1
                    m -= 1
            del deg[v]
    return ids


def extract_expander(G: Graph, params: ExpanderParams, threshold: int = EXACT_THRESHOLD,
                     trials: int = 100, rng_seed: int = 0) -> ExtractionResult:
    """Dense subgraph H with d(H) >= d(G)/2 and min degree >= d(H)/2, expanding as far as certified.

    Alternates stripping low-degree vertices with a search for a violating set
    X; on a violation it recurses into whichever of G[X + N(X)] and G[V - X] is
    denser, as long as that keeps d >= d(G)/2.  If neither piece does, the
    current graph is returned and, when small enough, the largest eps1 it
    actually satisfies is recorded instead of the requested one.
    """
    if G.n == 0:
        raise ValueError("cannot extract from the empty graph")
    target = average_degree(G) / 2
    ids = set(range(G.n))
    steps: list[dict] = []
    while True:
        ids = _strip_low_degree(G, ids)
        H, old = induced(G, ids)
        mode = "exact" if H.n <= threshold else "sampled"
        rep = check_expansion(H, params, threshold, trials, rng_seed)
        if rep.is_expander:
            result = ExtractionResult(H, old, params, mode, rep, steps)
            break
        X = rep.witness
        pieces = []
        for piece in (X | external_neighborhood(H, X), frozenset(range(H.n)) - X):
            P, _ = induced(H, piece)
            pieces.append((average_degree(P), -len(piece), sorted(piece)))
        dens, neg_size, piece = max(pieces)
        steps.append({"n": H.n, "witness_size": len(X), "next_n": -neg_size, "next_d": float(dens)})
        if dens < target:
            certified = None
            if H.n <= threshold:
                best = best_certifiable_eps1(H, params.k, threshold)
                if best is not None:
                    eps = min(params.eps1, best * (1 - 1e-9))
                    certified = ExpanderParams(eps, params.k)
                    rep = verify_expander_exact(H, certified, threshold)
            result = ExtractionResult(H, old, certified, mode, rep, steps)
            break
        ids = {old[v] for v in piece}

    Hd = average_degree(result.graph)
    assert Hd >= target, "extraction lost more than half the density"
    assert 2 * result.graph.min_degree() >= Hd or result.graph.n == 0
    return result


# --------------------------------------------------------------------- routing

def short_path_avoiding(G: Graph, A: Iterable[int], B: Iterable[int], W: Iterable[int] = (),
                        max_len: int | None = None) -> tuple[int, ...] | None:
    """Shortest A-B path in G - W of length at most ``max_len``, or None.

    Multi-source BFS from A; the lowest-id B vertex in the first layer that
    meets B is the endpoint.  The interior of the result misses A, B and W.
    """
    A = G.check(A)
    B = G.check(B)
    blocked = frozenset(W)
    if not A or not B:
        raise ValueError("A and B must be nonempty")
    sources = sorted(A - blocked)
    hit = [v for v in sources if v in B]
    if hit:
        return (hit[0],)
    parent = {v: -1 for v in sources}
    layer = sources
    depth = 0
    while layer and (max_len is None or depth < max_len):
        depth += 1
        nxt = []
        for v in layer:
            for u in G.nbrs[v]:
                if u not in parent and u not in blocked:
                    parent[u] = v
                    nxt.append(u)
        ends = sorted(u for u in nxt if u in B)
        if ends:
            path = [ends[0]]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            return tuple(reversed(path))
        # B vertices never serve as interior vertices
        layer = nxt
    return None


def diameter_property_samples(G: Graph, params: ExpanderParams, configs: int = 100,
                              rng_seed: int = 0) -> list[dict]:
    """Random (A, B, W) probes of the robust-diameter guarantee on an expander.

    Each probe draws a size x >= k, deletes floor(x eps(x)/4) random vertices,
    draws disjoint-from-W sets A, B of size x, and routes with the diam cap.
    """
    rng = random.Random(rng_seed)
    cap = math.ceil(diam_bound(G.n, params))
    out = []
    lo = max(1, math.ceil(params.k))
    for _ in range(configs):
        if lo > G.n:
            break
        x = rng.randint(lo, G.n)
        wsize = int(x * epsilon(x, params) / 4)
        wsize = min(wsize, G.n - x)
        W = frozenset(rng.sample(range(G.n), wsize))
        rest = [v for v in range(G.n) if v not in W]
        if len(rest) < x:
            continue
        A = frozenset(rng.sample(rest, x))
        B = frozenset(rng.sample(rest, x))
        path = short_path_avoiding(G, A, B, W, cap)
        out.append({"x": x, "deleted": wsize, "ok": path is not None,
                    "length": None if path is None else len(path) - 1, "cap": cap})
    return out
