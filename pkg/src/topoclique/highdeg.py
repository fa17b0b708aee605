"""Many high-degree vertices: either strip them, or use them as cores (Algorithm P).

The degree threshold splits G into the high-degree set L and the rest.  If L
is small it is deleted (`reduce_max_degree`).  Otherwise 2*ell vertices of L in
one colour class get private-ish stars S1(v) and pairs are connected greedily
through those stars (`run_algorithm_p`).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .cliques import largest_connected_core_set
from .expander import short_path_avoiding
from .graph import Graph, delete_vertices, two_coloring
from .verify import SubdivisionCertificate

log = logging.getLogger(__name__)


class StarConstructionError(ValueError):
    def __init__(self, vertex: int, available: int, wanted: int):
        super().__init__(f"core {vertex} has {available} qualifying neighbours, needs {wanted}")
        self.vertex = vertex
        self.available = available
        self.wanted = wanted


@dataclass
class HighDegConfig:
    s: int = 2
    t: int = 2
    eps1: float = 0.1
    eps2: float = 0.1
    c0: float = 1.0
    mode: str = "practical"  # "practical" | "paper"
    # explicit overrides; None means "use the mode's formula"
    delta: float | None = None
    core_count: int | None = None
    star_size: int | None = None
    lprime_deg_cap: int | None = None
    path_cap: int | None = None
    discard_cap: float | None = None
    target: int | None = None
    # practical-profile knobs
    delta_factor: float = 1.0
    star_fraction: float = 1.0  # practical star size = star_fraction * delta / 2
    discard_fraction: float = 1.0

    def plan(self, n: int, d: float) -> "HighDegPlan":
        s = self.s
        dpow = d ** (s / (s - 1)) if d > 0 else 0.0
        ell = self.c0 * d ** (0.5 * s / (s - 1)) if d > 0 else 0.0
        m = math.log(15 * n / (self.eps2 * dpow)) if dpow > 0 and n > 0 else 0.0
        m = max(m, 1.0)
        cap_formula = d ** (0.5 * (s - 2) / (s - 1)) if d > 0 else 1.0
        if self.mode == "paper":
            delta = max(d / 8, self.c0 * d * m ** (10 * s))
            plan = HighDegPlan(
                mode="paper", ell=ell, m=m, delta=delta,
                core_count=max(1, math.floor(2 * ell)),
                star_size=max(1, math.ceil(delta / 2)),
                lprime_deg_cap=max(0, math.floor(self.c0 * d / ell)) if ell > 0 else 0,
                path_cap=max(2, math.floor(2 * m ** 4)),
                discard_cap=delta / 4,
                target=max(1, math.ceil(ell)),
            )
        else:
            delta = max(d / 8, self.delta_factor * d)
            star = max(1, math.ceil(self.star_fraction * delta / 2))
            plan = HighDegPlan(
                mode="practical", ell=ell, m=m, delta=delta,
                core_count=max(2, 2 * math.ceil(ell)),
                star_size=star,
                lprime_deg_cap=max(1, math.floor(cap_formula)),
                path_cap=4 + 2 * math.ceil(math.log2(max(n, 2))),
                discard_cap=self.discard_fraction * star,
                target=2,
            )
        for name in ("delta", "core_count", "star_size", "lprime_deg_cap", "path_cap", "discard_cap", "target"):
            val = getattr(self, name)
            if val is not None:
                setattr(plan, name, val)
        return plan


@dataclass
class HighDegPlan:
    mode: str
    ell: float
    m: float
    delta: float
    core_count: int
    star_size: int
    lprime_deg_cap: int
    path_cap: int
    discard_cap: float
    target: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class StarSystem:
    cores: list[int]
    s1: dict[int, frozenset[int]]

    def members(self) -> dict[int, list[int]]:
        """vertex -> cores whose star contains it"""
        out: dict[int, list[int]] = {}
        for c in self.cores:
            for x in self.s1[c]:
                out.setdefault(x, []).append(c)
        return out


@dataclass
class ConnectionState:
    paths: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    used: set[int] = field(default_factory=set)
    discarded: set[int] = field(default_factory=set)
    usage_count: dict[int, int] = field(default_factory=dict)

    def check_invariants(self, stars: StarSystem, discard_cap: float) -> None:
        core_set = set(stars.cores)
        seen: set[int] = set()
        for path in self.paths.values():
            interior = set(path[1:-1])
            assert not interior & seen, "path interiors overlap"
            assert not interior & core_set, "path interior meets a core"
            seen |= interior
        assert seen == self.used
        for c in stars.cores:
            assert self.usage_count[c] == len(stars.s1[c] & self.used)
            if c not in self.discarded:
                assert self.usage_count[c] <= discard_cap


def split_by_degree(G: Graph, delta: float) -> tuple[frozenset[int], frozenset[int]]:
    L = frozenset(v for v in range(G.n) if G.degree(v) >= delta)
    return L, frozenset(range(G.n)) - L


@dataclass
class Reduction:
    graph: Graph
    old_ids: tuple[int, ...]
    checks: dict


def reduce_max_degree(G: Graph, d: float, cfg: HighDegConfig, delta: float | None = None) -> Reduction | None:
    """G - L with the min/max-degree conclusions checked; None when a check fails."""
    s = cfg.s
    if delta is None:
        delta = cfg.plan(G.n, d).delta
    L, _ = split_by_degree(G, delta)
    H, old = delete_vertices(G, L)
    dpow = d ** (s / (s - 1)) if d > 0 else 0.0
    ratio = H.n / dpow if dpow > 0 else math.inf
    max_deg_bound = d * math.log(ratio) ** (10 * s) if ratio > 1 else 0.0
    checks = {
        "removed": len(L),
        "min_degree": H.min_degree(),
        "min_degree_ok": H.n > 0 and 16 * H.min_degree() >= d,
        "max_degree": H.max_degree(),
        "max_degree_bound": max_deg_bound,
        "max_degree_ok": H.n > 0 and H.max_degree() <= max_deg_bound,
    }
    if not (checks["min_degree_ok"] and checks["max_degree_ok"]):
        log.info("max-degree reduction checks failed: %s", checks)
        return None
    return Reduction(H, old, checks)


def choose_core_candidates(G: Graph, L: Iterable[int], count: int) -> list[int]:
    """Up to ``count`` vertices of L from one colour class, highest degree first."""
    color = two_coloring(G)
    if color is None:
        raise ValueError("core candidates need a bipartite host")
    classes = [sorted(v for v in L if color[v] == c) for c in (0, 1)]
    pick = classes[0] if len(classes[0]) >= len(classes[1]) else classes[1]
    pick = sorted(pick, key=lambda v: (-G.degree(v), v))[:count]
    return sorted(pick)


def build_star_system(G: Graph, Lprime: list[int], star_size: int, lprime_deg_cap: int) -> StarSystem:
    """S1(v): the lowest-id ``star_size`` neighbours of v with at most ``cap`` neighbours in L'."""
    Lset = frozenset(Lprime)
    s1 = {}
    for v in Lprime:
        ok = [u for u in G.nbrs[v] if u not in Lset and len(G.adj[u] & Lset) <= lprime_deg_cap]
        if len(ok) < star_size:
            raise StarConstructionError(v, len(ok), star_size)
        s1[v] = frozenset(ok[:star_size])
    return StarSystem(sorted(Lprime), s1)


@dataclass
class AlgorithmPResult:
    certificate: SubdivisionCertificate | None
    state: ConnectionState
    diagnostics: dict


def run_algorithm_p(G: Graph, stars: StarSystem, plan: HighDegPlan, debug: bool = True) -> AlgorithmPResult:
    """Greedy pair connection through the stars, with the discard rule.

    Passes over unconnected pairs of live cores in lexicographic order repeat
    until a pass adds nothing.  A connection is a shortest path from the unused
    part of S1(v) to the unused part of S1(v') avoiding used vertices and all
    cores, extended by one hop at each end.
    """
    cores = stars.cores
    core_set = frozenset(cores)
    members = stars.members()
    st = ConnectionState(usage_count={c: 0 for c in cores})
    inner_cap = plan.path_cap - 2
    failures = 0
    discard_log = []
    passes = 0
    changed = True
    while changed:
        changed = False
        passes += 1
        for v, w in combinations(cores, 2):
            if (v, w) in st.paths or v in st.discarded or w in st.discarded:
                continue
            A = stars.s1[v] - st.used
            B = stars.s1[w] - st.used
            if not A or not B or inner_cap < 0:
                failures += 1
                continue
            blocked = (st.used | core_set) - A - B
            route = short_path_avoiding(G, A, B, blocked, inner_cap)
            if route is None:
                failures += 1
                continue
            path = (v, *route, w)
            st.paths[(v, w)] = path
            for x in route:
                st.used.add(x)
                for c in members.get(x, ()):
                    st.usage_count[c] += 1
            for c in cores:
                if c not in st.discarded and st.usage_count[c] > plan.discard_cap:
                    st.discarded.add(c)
                    discard_log.append({"core": c, "after_pair": [v, w], "used": st.usage_count[c]})
            changed = True
            if debug:
                st.check_invariants(stars, plan.discard_cap)

    live = [c for c in cores if c not in st.discarded]
    chosen = largest_connected_core_set(live, st.paths)
    diag = {
        "cores": len(cores),
        "live": len(live),
        "connections": len(st.paths),
        "failed_attempts": failures,
        "passes": passes,
        "discards": discard_log,
        "interior_vertices": len(st.used),
        "complete_on_live": len(chosen) == len(live),
    }
    if len(chosen) < plan.target:
        return AlgorithmPResult(None, st, diag)
    paths = {(a, b): st.paths[(a, b)] for a, b in combinations(chosen, 2)}
    cert = SubdivisionCertificate.build(chosen, paths, {"route": "highdeg"})
    return AlgorithmPResult(cert, st, diag)


def _stars_dropping(G: Graph, cand: list[int], plan: HighDegPlan, star_size: int):
    """Drop cores lacking a full star until the rest all have one."""
    dropped = []
    while cand:
        try:
            return build_star_system(G, cand, star_size, plan.lprime_deg_cap), dropped
        except StarConstructionError as exc:
            dropped.append(exc.vertex)
            cand = [c for c in cand if c != exc.vertex]
    return None, dropped


def highdeg_route(G: Graph, d: float, cfg: HighDegConfig, debug: bool = True) -> AlgorithmPResult:
    """Cores from the high-degree set, stars per the degree cap, then Algorithm P.

    In paper mode the first core without a full star aborts the route.  In
    practical mode such cores are dropped, and the star size is halved while
    that leaves fewer than two cores; the largest certificate over the tried
    sizes is returned.
    """
    plan = cfg.plan(G.n, d)
    L, _ = split_by_degree(G, plan.delta)
    diag: dict = {"plan": plan.to_json(), "L": len(L)}
    if not L:
        return AlgorithmPResult(None, ConnectionState(), {**diag, "reason": "no high-degree vertices"})
    cand = choose_core_candidates(G, L, plan.core_count)
    if plan.mode == "paper":
        try:
            stars = build_star_system(G, cand, plan.star_size, plan.lprime_deg_cap)
        except StarConstructionError as exc:
            return AlgorithmPResult(None, ConnectionState(), {**diag, "reason": str(exc)})
        res = run_algorithm_p(G, stars, plan, debug)
        res.diagnostics.update(diag)
        return res

    best = None
    tried = []
    size = plan.star_size
    while size >= 1:
        stars, dropped = _stars_dropping(G, cand, plan, size)
        if stars is not None and len(stars.cores) >= 2:
            sub = HighDegPlan(**{**plan.to_json(), "star_size": size,
                                 "discard_cap": plan.discard_cap * size / plan.star_size})
            res = run_algorithm_p(G, stars, sub, debug)
            order = res.certificate.order if res.certificate else 0
            tried.append({"star_size": size, "cores": len(stars.cores), "dropped": len(dropped), "order": order})
            if best is None or order > (best.certificate.order if best.certificate else 0):
                best = res
        else:
            tried.append({"star_size": size, "cores": 0 if stars is None else len(stars.cores),
                          "dropped": len(dropped), "order": 0})
        size //= 2
    if best is None:
        return AlgorithmPResult(None, ConnectionState(), {**diag, "reason": "no star size leaves two cores",
                                                          "tried": tried})
    best.diagnostics.update(diag, tried=tried)
    return best
