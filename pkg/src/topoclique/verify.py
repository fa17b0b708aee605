"""Subdivision certificates, an independent checker, and a brute-force oracle."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graph import Graph
from .kst import SizeRefused

ORACLE_LIMIT = 10
_COUNT_CAP = 64


class CertificateError(ValueError):
    """Structurally malformed certificate (missing or duplicated pair, bad fields)."""


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass
class SubdivisionCertificate:
    cores: list[int]
    paths: dict[tuple[int, int], tuple[int, ...]]
    meta: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.cores)

    @classmethod
    def build(cls, cores: Iterable[int], paths: dict, meta: dict | None = None) -> "SubdivisionCertificate":
        """Normalise pairs to (low, high) and orient each path from low to high."""
        norm = {}
        for (a, b), p in paths.items():
            p = tuple(p)
            key = _key(a, b)
            if p and p[0] != key[0]:
                p = p[::-1]
            norm[key] = p
        return cls(sorted(cores), dict(sorted(norm.items())), dict(meta or {}))

    def relabel(self, old_ids) -> "SubdivisionCertificate":
        """Translate every id through ``old_ids`` (a subgraph's id table)."""
        return SubdivisionCertificate.build(
            [old_ids[v] for v in self.cores],
            {(old_ids[a], old_ids[b]): [old_ids[v] for v in p] for (a, b), p in self.paths.items()},
            self.meta,
        )

    def to_json(self) -> dict:
        return {
            "cores": list(self.cores),
            "paths": [{"pair": list(k), "vertices": list(p)} for k, p in self.paths.items()],
            "meta": self.meta,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "SubdivisionCertificate":
        try:
            cores = [int(c) for c in data["cores"]]
            entries = data["paths"]
            meta = data.get("meta", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from None
        paths: dict[tuple[int, int], tuple[int, ...]] = {}
        for e in entries:
            try:
                a, b = (int(x) for x in e["pair"])
                verts = tuple(int(x) for x in e["vertices"])
            except (KeyError, TypeError, ValueError) as exc:
                raise CertificateError(f"malformed path entry {e!r}: {exc}") from None
            key = _key(a, b)
            if key in paths:
                raise CertificateError(f"pair {list(key)} has more than one path")
            paths[key] = verts
        return cls(cores, paths, meta)

    @classmethod
    def loads(cls, text: str) -> "SubdivisionCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"certificate is not JSON: {exc}") from None
        return cls.from_json(data)


def singleton_certificate(G: Graph, route: str = "trivial") -> SubdivisionCertificate:
    cores = [0] if G.n else []
    return SubdivisionCertificate(cores, {}, {"route": route})


@dataclass
class Verdict:
    ok: bool
    order: int
    reason: str = ""
    vertex: int | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_subdivision(G: Graph, cert: SubdivisionCertificate) -> Verdict:
    """Check the certificate against G; the first failure is reported.

    Raises CertificateError when the pair structure itself is wrong; every other
    defect yields a false verdict naming the offending vertex or pair.
    """
    cores = list(cert.cores)
    order = len(cores)
    core_set = set(cores)
    if len(core_set) != order:
        dup = next(c for c in cores if cores.count(c) > 1)
        return Verdict(False, order, f"core {dup} listed twice", vertex=dup)
    for c in cores:
        if not (isinstance(c, int) and 0 <= c < G.n):
            return Verdict(False, order, f"core {c} is not a vertex", vertex=c)
    expected = {_key(a, b) for a, b in combinations(cores, 2)}
    given = {_key(a, b) for a, b in cert.paths}
    if len(given) != len(cert.paths):
        raise CertificateError("a pair has more than one path")
    for key in sorted(expected - given):
        raise CertificateError(f"pair {list(key)} has no path")
    for key in sorted(given - expected):
        raise CertificateError(f"pair {list(key)} is not a pair of cores")

    owner: dict[int, tuple[int, int]] = {}
    for (a, b), path in sorted(cert.paths.items()):
        key = _key(a, b)
        path = list(path)
        if len(path) < 2:
            return Verdict(False, order, f"path for {list(key)} too short", pair=key)
        if {path[0], path[-1]} != {a, b}:
            return Verdict(False, order, f"path for {list(key)} has endpoints {path[0]},{path[-1]}", pair=key)
        for v in path:
            if not (isinstance(v, int) and 0 <= v < G.n):
                return Verdict(False, order, f"vertex {v} on path {list(key)} is not in the graph", vertex=v, pair=key)
        if len(set(path)) != len(path):
            rep = next(v for v in path if path.count(v) > 1)
            return Verdict(False, order, f"path {list(key)} repeats vertex {rep}", vertex=rep, pair=key)
        for x, y in zip(path, path[1:]):
            if not G.has_edge(x, y):
                return Verdict(False, order, f"path {list(key)} uses non-edge {x}-{y}", vertex=x, pair=key)
        for v in path[1:-1]:
            if v in core_set:
                return Verdict(False, order, f"core {v} is interior to path {list(key)}", vertex=v, pair=key)
            if v in owner:
                return Verdict(False, order,
                               f"vertex {v} is interior to paths {list(owner[v])} and {list(key)}",
                               vertex=v, pair=key)
            owner[v] = key
    return Verdict(True, order)


# ----------------------------------------------------------------------- oracle

def _simple_paths(G: Graph, a: int, b: int, blocked: int, limit: int | None = None):
    """Simple a-b paths whose interior avoids the ``blocked`` bitmask."""
    out = []
    path = [a]

    def rec(v: int, used: int):
        if limit is not None and len(out) >= limit:
            return
        for u in G.nbrs[v]:
            if u == b:
                out.append(tuple(path) + (b,))
                if limit is not None and len(out) >= limit:
                    return
                continue
            bit = 1 << u
            if used & bit or blocked & bit:
                continue
            path.append(u)
            rec(u, used | bit)
            path.pop()

    rec(a, 1 << a)
    return out


def _realise(G: Graph, cores: tuple[int, ...]):
    core_mask = 0
    for c in cores:
        core_mask |= 1 << c
    pairs = list(combinations(cores, 2))
    chosen: dict[tuple[int, int], tuple[int, ...]] = {}

    def rec(remaining: list, used: int) -> bool:
        if not remaining:
            return True
        # fail-fast: the pair with the fewest routes goes next
        best = None
        for pair in remaining:
            routes = _simple_paths(G, pair[0], pair[1], core_mask | used,
                                   _COUNT_CAP if best is None else len(best[1]))
            if not routes:
                return False
            if best is None or len(routes) < len(best[1]):
                best = (pair, routes)
                if len(routes) == 1:
                    break
        pair, _ = best
        routes = sorted(_simple_paths(G, pair[0], pair[1], core_mask | used), key=lambda p: (len(p), p))
        rest = [p for p in remaining if p != pair]
        for route in routes:
            mask = 0
            for v in route[1:-1]:
                mask |= 1 << v
            chosen[pair] = route
            if rec(rest, used | mask):
                return True
        del chosen[pair]
        return False

    return dict(chosen) if rec(pairs, 0) else None


def oracle_max_subdivision(G: Graph, limit_n: int = ORACLE_LIMIT) -> tuple[int, SubdivisionCertificate]:
    """Largest t with a K_t-subdivision in G, by exhaustive search, with a witness."""
    if G.n > limit_n:
        raise SizeRefused(f"oracle refused for n={G.n} > {limit_n}")
    if G.n == 0:
        return 0, SubdivisionCertificate([], {}, {"route": "oracle"})
    degs = sorted((G.degree(v) for v in range(G.n)), reverse=True)
    ub = 1
    for t in range(1, G.n + 1):
        # t cores each need degree >= t-1, and the C(t,2) paths need distinct edges
        if degs[t - 1] >= t - 1 and math.comb(t, 2) <= G.edge_count:
            ub = t
    for t in range(ub, 0, -1):
        pool = [v for v in range(G.n) if G.degree(v) >= t - 1]
        for cores in combinations(pool, t):
            paths = _realise(G, cores)
            if paths is not None:
                cert = SubdivisionCertificate.build(cores, paths, {"route": "oracle"})
                return t, cert
    return 0, SubdivisionCertificate([], {}, {"route": "oracle"})
