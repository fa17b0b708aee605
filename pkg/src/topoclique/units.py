"""Hubs, units, and the two greedy algorithms that build and join them.

A hub is a centre u, a first layer S1(u) of neighbours, and for each z in S1(u)
a private second layer S1(z).  A unit is a core joined by disjoint spokes to
several disjoint hubs.  `build_units` grows units one at a time (Algorithm Q);
`connect_units` links pairs of units through their hubs' second layers
(Algorithm R) and assembles the composite core-to-core paths.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations

from .cliques import largest_connected_core_set, splice
from .expander import short_path_avoiding
from .graph import Graph, average_degree, is_path
from .verify import SubdivisionCertificate

log = logging.getLogger(__name__)


class UnitConstructionError(RuntimeError):
    def __init__(self, message: str, tally: dict):
        super().__init__(message)
        self.tally = tally


@dataclass(frozen=True)
class Hub:
    center: int
    s1: tuple[int, ...]
    leaves: dict  # z -> tuple of S1(z)

    @property
    def b1(self) -> frozenset[int]:
        return frozenset((self.center, *self.s1))

    @property
    def s2(self) -> frozenset[int]:
        return frozenset(x for z in self.s1 for x in self.leaves[z])

    def vertices(self) -> frozenset[int]:
        return self.b1 | self.s2

    def profile(self) -> tuple[int, int]:
        return len(self.s1), min((len(self.leaves[z]) for z in self.s1), default=0)

    def to_json(self) -> dict:
        return {"center": self.center, "s1": list(self.s1),
                "leaves": {str(z): list(self.leaves[z]) for z in self.s1}}


def check_hub(G: Graph, hub: Hub, h1: int, h2: int) -> None:
    """Independent structural check; raises AssertionError on any defect."""
    assert len(hub.s1) == h1 and len(set(hub.s1)) == h1
    seen = {hub.center}
    for z in hub.s1:
        assert G.has_edge(hub.center, z), (hub.center, z)
        assert z not in seen
        seen.add(z)
    for z in hub.s1:
        lv = hub.leaves[z]
        assert len(lv) == h2 and len(set(lv)) == h2
        for x in lv:
            assert G.has_edge(z, x), (z, x)
            assert x not in seen, x
            seen.add(x)


@dataclass
class Unit:
    core: int
    hubs: list[Hub]
    spokes: list[tuple[int, ...]]  # spokes[j] runs core -> hubs[j].center

    @property
    def exterior(self) -> frozenset[int]:
        out: set[int] = set()
        for h in self.hubs:
            out |= h.s2
        return frozenset(out)

    @property
    def interior(self) -> frozenset[int]:
        out = {self.core}
        for h, sp in zip(self.hubs, self.spokes):
            out |= h.b1
            out.update(sp)
        return frozenset(out)

    def vertices(self) -> frozenset[int]:
        return self.interior | self.exterior

    def to_json(self) -> dict:
        return {"core": self.core, "hubs": [h.to_json() for h in self.hubs],
                "spokes": [list(p) for p in self.spokes]}


def check_unit(G: Graph, unit: Unit, h0: int, h1: int, h2: int, h3: int) -> None:
    assert len(unit.hubs) == h0 == len(unit.spokes)
    hub_sets = [h.vertices() for h in unit.hubs]
    for a, b in combinations(hub_sets, 2):
        assert not a & b, "hubs overlap"
    for h in unit.hubs:
        check_hub(G, h, h1, h2)
    spoke_inner: set[int] = set()
    for h, sp in zip(unit.hubs, unit.spokes):
        assert sp[0] == unit.core and sp[-1] == h.center
        assert len(sp) - 1 <= h3
        assert is_path(G, sp)
        inner = set(sp[1:])
        assert not inner & spoke_inner, "spokes meet away from the core"
        spoke_inner |= inner
    assert not unit.interior & unit.exterior


# ------------------------------------------------------------------ hubs

def _strip(G: Graph, alive: set[int], min_deg: float) -> set[int]:
    alive = set(alive)
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if len(G.adj[v] & alive) < min_deg:
                alive.discard(v)
                changed = True
    return alive


def find_disjoint_hubs(G: Graph, W, h1: int, h2: int, count: int,
                       center_forbidden=(), min_deg: float | None = None) -> list[Hub]:
    """Up to ``count`` pairwise-disjoint (h1, h2)-hubs in G - W.

    Vertices of degree below ``min_deg`` (default: half the average degree of
    G - W) are stripped first.  Centres are scanned by id; for each, a maximal
    family of disjoint h2-leaf stars centred in N(v) is grown and the hub is
    kept when the family reaches h1 stars.  Centres and first layers also avoid
    ``center_forbidden``; leaves may use those vertices.
    """
    if h1 < 1 or h2 < 1:
        raise ValueError("hub profile must be positive")
    blocked = set(G.check(W))
    alive = set(range(G.n)) - blocked
    if min_deg is None:
        m = sum(len(G.adj[v] & alive) for v in alive)
        min_deg = m / (2 * len(alive)) if alive else 0
    alive = _strip(G, alive, min_deg)
    cf = frozenset(center_forbidden)
    hubs: list[Hub] = []
    for v in sorted(alive):
        if len(hubs) >= count:
            break
        if v in cf or v not in alive:
            continue
        cand = [z for z in G.nbrs[v] if z in alive and z not in cf]
        if len(cand) < h1:
            continue
        reserved = {v, *cand}
        taken: set[int] = set()
        stars: dict[int, tuple[int, ...]] = {}
        for z in cand:
            lv = [x for x in G.nbrs[z] if x in alive and x not in reserved and x not in taken]
            if len(lv) >= h2:
                stars[z] = tuple(lv[:h2])
                taken.update(stars[z])
                if len(stars) == h1:
                    break
        if len(stars) < h1:
            continue
        hub = Hub(v, tuple(sorted(stars)), stars)
        hubs.append(hub)
        alive -= hub.vertices()
    if len(hubs) < count:
        log.debug("found %d of %d (%d,%d)-hubs", len(hubs), count, h1, h2)
    return hubs


# ------------------------------------------------------------------ units

@dataclass
class UnitConfig:
    s: int = 2
    t: int = 2
    mode: str = "practical"
    units: int | None = None  # how many units to build
    h0: int | None = None
    h1: int | None = None
    h2: int | None = None
    spoke_cap: int | None = None  # Algorithm Q path cap (2m)
    conn_cap: int | None = None  # Algorithm R path cap (6m)
    interior_cap: float | None = None  # R4 discard threshold (ell*m)
    w_hubs: int | None = None
    u_hubs: int | None = None

    def plan(self, n: int, d: float) -> "UnitPlan":
        s = self.s
        ell = d ** (0.5 * s / (s - 1)) if d > 0 else 1.0
        if self.mode == "paper":
            c = 1 / (800 * self.t)
            ratio = n / ell ** 2 if ell > 0 else 1.0
            m = math.log(ratio) ** (2 * s) if ratio > 1 else 1.0
            plan = UnitPlan(
                units=max(1, math.floor(ell)), h0=max(1, math.floor(c * ell)), h1=max(1, math.floor(m * m)),
                h2=max(1, math.floor(c * ell)), spoke_cap=max(1, math.floor(2 * m)),
                conn_cap=max(1, math.floor(6 * m)), interior_cap=ell * m,
                w_hubs=max(1, math.floor(m ** 3)), u_hubs=max(1, math.floor(ell * m ** 3)),
            )
        else:
            lg = max(2, math.ceil(math.log2(max(n, 2))))
            h0 = max(1, math.floor(math.sqrt(d)) - 1)
            plan = UnitPlan(
                units=max(2, math.ceil(d)), h0=h0, h1=2, h2=1,
                spoke_cap=lg, conn_cap=3 * lg, interior_cap=float(n),
                w_hubs=4, u_hubs=4 * h0,
            )
        for name in ("units", "h0", "h1", "h2", "spoke_cap", "conn_cap", "interior_cap", "w_hubs", "u_hubs"):
            val = getattr(self, name)
            if val is not None:
                setattr(plan, name, val)
        return plan


@dataclass
class UnitPlan:
    units: int
    h0: int
    h1: int
    h2: int
    spoke_cap: int
    conn_cap: int
    interior_cap: float
    w_hubs: int
    u_hubs: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _prune_hub(hub: Hub, used: set[int], h1: int, h2: int) -> Hub | None:
    """Shrink a hub to profile (h1, h2) using no vertex in ``used``."""
    keep = {}
    for z in hub.s1:
        if z in used:
            continue
        lv = [x for x in hub.leaves[z] if x not in used]
        if len(lv) >= h2:
            keep[z] = tuple(lv[:h2])
            if len(keep) == h1:
                return Hub(hub.center, tuple(sorted(keep)), keep)
    return None


def _algorithm_q(G: Graph, plan: UnitPlan, blocked: set[int], center_forbidden: set[int]) -> tuple[Unit | None, dict]:
    if plan.h0 == 1:
        # degenerate profile: the hub centre doubles as the core, joined by a trivial spoke
        found = find_disjoint_hubs(G, blocked, plan.h1, plan.h2, 1, center_forbidden)
        tally = {"w_hubs": 0, "u_hubs": len(found), "connections": 0}
        if not found:
            return None, tally
        h = found[0]
        return Unit(h.center, [h], [(h.center,)]), tally
    w_list = find_disjoint_hubs(G, blocked, 2 * plan.h0, 2 * plan.h2, plan.w_hubs, center_forbidden)
    taken = set(blocked)
    for h in w_list:
        taken |= h.vertices()
    u_list = find_disjoint_hubs(G, taken, 2 * plan.h1, 2 * plan.h2, plan.u_hubs, center_forbidden)
    tally = {"w_hubs": len(w_list), "u_hubs": len(u_list), "connections": 0}
    if not w_list or len(u_list) < plan.h0:
        return None, tally
    all_b1: set[int] = set()
    for h in (*w_list, *u_list):
        all_b1 |= h.b1
    hard = blocked | center_forbidden
    used: set[int] = set()
    conns: dict[int, list[tuple[int, tuple[int, ...]]]] = {w.center: [] for w in w_list}
    u_done: set[int] = set()
    inner_cap = plan.spoke_cap - 2
    progress = True
    while progress and inner_cap >= 0:
        progress = False
        for w in w_list:  # round-robin: one new connection per w per pass
            if len(conns[w.center]) >= plan.h0:
                continue
            A = set(w.s1) - used
            if not A:
                continue
            for u in u_list:
                if u.center in u_done:
                    continue
                B = set(u.s1) - used
                if not B:
                    continue
                avoid = (hard | used | all_b1) - A - B
                route = short_path_avoiding(G, A, B, avoid, inner_cap)
                if route is None:
                    continue
                spoke = (w.center, *route, u.center)
                conns[w.center].append((u.center, spoke))
                used.update(spoke)
                u_done.add(u.center)
                tally["connections"] += 1
                progress = True
                break
        if any(len(c) >= plan.h0 for c in conns.values()):
            break
    best = max(w_list, key=lambda w: (len(conns[w.center]), -w.center))
    tally["best_w"] = best.center
    tally["best_count"] = len(conns[best.center])
    if len(conns[best.center]) < plan.h0:
        return None, tally
    by_center = {u.center: u for u in u_list}
    chosen = conns[best.center]
    spoke_vertices = {x for _, sp in chosen for x in sp}
    hubs, spokes = [], []
    for uc, sp in chosen:
        pruned = _prune_hub(by_center[uc], spoke_vertices - {uc}, plan.h1, plan.h2)
        if pruned is None:
            continue
        hubs.append(pruned)
        spokes.append(sp)
        if len(hubs) == plan.h0:
            break
    tally["pruned_ok"] = len(hubs)
    if len(hubs) < plan.h0:
        return None, tally
    unit = Unit(best.center, hubs, spokes)
    # exteriors must stay clear of the unit's own spokes and interior
    assert not unit.interior & unit.exterior
    return unit, tally


def build_units(G: Graph, cfg: UnitConfig, d: float | None = None, debug: bool = True) -> tuple[list[Unit], dict]:
    """Units with pairwise-disjoint interiors, built one at a time by Algorithm Q.

    Each new unit avoids every earlier unit's interior; its centres, first
    layers and spokes also avoid earlier exteriors, while its own leaves may
    share vertices with earlier exteriors.
    """
    if d is None:
        d = float(average_degree(G))
    plan = cfg.plan(G.n, d)
    units: list[Unit] = []
    tallies = []
    interiors: set[int] = set()
    exteriors: set[int] = set()
    while len(units) < plan.units:
        unit, tally = _algorithm_q(G, plan, interiors, exteriors)
        tallies.append(tally)
        if unit is None:
            break
        if debug:
            check_unit(G, unit, plan.h0, plan.h1, plan.h2, plan.spoke_cap)
            assert not unit.interior & (interiors | exteriors)
            assert not unit.exterior & interiors
        units.append(unit)
        interiors |= unit.interior
        exteriors |= unit.exterior
    diag = {"plan": plan.to_json(), "built": len(units), "tallies": tallies}
    if not units:
        log.info("unit construction failed: %s", tallies[-1] if tallies else {})
    return units, diag


# ------------------------------------------------------------------ Algorithm R

@dataclass
class UnitLinks:
    paths: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    used: set[int] = field(default_factory=set)
    used_hubs: set[int] = field(default_factory=set)
    discarded: set[int] = field(default_factory=set)
    interior_usage: dict[int, int] = field(default_factory=dict)


def _hub_entries(unit: Unit, links: UnitLinks, blocked: set[int]) -> dict[int, tuple[int, int, int]]:
    """Available leaf y -> (hub index, z, y) over unused hubs of the unit."""
    out: dict[int, tuple[int, int, int]] = {}
    for j, h in enumerate(unit.hubs):
        if h.center in links.used_hubs or h.center in links.used:
            continue
        for z in h.s1:
            if z in links.used:
                continue
            for y in h.leaves[z]:
                if y not in blocked and y not in out:
                    out[y] = (j, z, y)
    return out


def connect_units(G: Graph, units: list[Unit], cfg: UnitConfig, d: float | None = None,
                  debug: bool = True) -> tuple[SubdivisionCertificate | None, dict]:
    """Join unit pairs through unused hubs (Algorithm R) and assemble composite paths.

    Each connection runs between second layers of an unused hub on each side,
    avoids every spoke and every vertex used so far, and uses each hub once.
    A unit whose interior absorbs more than the configured number of
    connection vertices is discarded.
    """
    if not units:
        return None, {"reason": "no units"}
    if d is None:
        d = float(average_degree(G))
    plan = cfg.plan(G.n, d)
    W: set[int] = set()
    for u in units:
        for sp in u.spokes:
            W.update(sp)
    interiors = [u.interior for u in units]
    links = UnitLinks(interior_usage={i: 0 for i in range(len(units))})
    failures = 0
    progress = True
    while progress:
        progress = False
        for i, j in combinations(range(len(units)), 2):
            if (i, j) in links.paths or i in links.discarded or j in links.discarded:
                continue
            blocked = W | links.used
            A = _hub_entries(units[i], links, blocked)
            B = _hub_entries(units[j], links, blocked)
            if not A or not B:
                failures += 1
                continue
            hub_b1 = set()
            for h in (*units[i].hubs, *units[j].hubs):
                hub_b1 |= h.b1
            avoid = (blocked | hub_b1) - set(A) - set(B)
            route = short_path_avoiding(G, A, B, avoid, plan.conn_cap)
            if route is None:
                failures += 1
                continue
            ja, za, _ = A[route[0]]
            jb, zb, _ = B[route[-1]]
            ha, hb = units[i].hubs[ja], units[j].hubs[jb]
            walk = (*units[i].spokes[ja], za, *route, zb, *reversed(units[j].spokes[jb]))
            path = splice(walk)
            assert path[0] == units[i].core and path[-1] == units[j].core and is_path(G, path)
            links.paths[(i, j)] = path
            links.used.update(path[1:-1])
            links.used_hubs.update((ha.center, hb.center))
            for k, inter in enumerate(interiors):
                if k in (i, j):
                    continue
                links.interior_usage[k] += len(inter & set(route))
                if k not in links.discarded and links.interior_usage[k] > plan.interior_cap:
                    links.discarded.add(k)
            progress = True
    live = [i for i in range(len(units)) if i not in links.discarded]
    chosen = largest_connected_core_set(live, links.paths)
    diag = {"units": len(units), "connections": len(links.paths), "failed_attempts": failures,
            "discarded": sorted(links.discarded)}
    if not chosen:
        return None, diag
    cores = [units[i].core for i in chosen]
    paths = {(units[a].core, units[b].core): links.paths[(a, b)] for a, b in combinations(chosen, 2)}
    cert = SubdivisionCertificate.build(cores, paths, {"route": "units"})
    if debug:
        from .verify import verify_subdivision
        assert verify_subdivision(G, cert).ok
    return cert, diag


def units_route(G: Graph, cfg: UnitConfig, d: float | None = None, debug: bool = True):
    units, diag = build_units(G, cfg, d, debug)
    cert, cdiag = connect_units(G, units, cfg, d, debug)
    diag["connect"] = cdiag
    return cert, diag
