"""K_{s,t}-freeness and the Kovari-Sos-Turan counting bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph import Graph

EXHAUSTIVE_N_LIMIT = 60


class SizeRefused(ValueError):
    """An exhaustive search was refused because of the input size."""


class AuditPreconditionError(ValueError):
    def __init__(self, message: str, witness: tuple[tuple[int, ...], tuple[int, ...]]):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class KstParams:
    s: int
    t: int

    def __post_init__(self):
        if not 2 <= self.s <= self.t:
            raise ValueError(f"need 2 <= s <= t, got s={self.s}, t={self.t}")


def _first_joined_set(G: Graph, pool: list[int], s: int, t: int, allowed: frozenset[int] | None):
    """Lexicographically first s-subset of ``pool`` with >= t common neighbours (inside ``allowed``)."""
    chosen: list[int] = []

    def rec(start: int, common: frozenset[int] | None):
        if len(chosen) == s:
            return tuple(chosen), tuple(sorted(common)[:t])
        for i in range(start, len(pool) - (s - len(chosen)) + 1):
            v = pool[i]
            nb = G.adj[v] if allowed is None else G.adj[v] & allowed
            nxt = nb if common is None else common & nb
            if len(nxt) < t:
                continue
            chosen.append(v)
            found = rec(i + 1, nxt)
            chosen.pop()
            if found:
                return found
        return None

    return rec(0, None)


def is_kst_free(G: Graph, p: KstParams, force: bool = False):
    """(True, None) if G has no K_{s,t}; otherwise (False, (s_side, t_side)).

    Since t >= s, a copy exists iff some s-set has t common neighbours, so only
    s-sets are enumerated (lexicographically, pruned on the running common
    neighbourhood).  s = 2 is polynomial and always allowed; larger s is refused
    for s >= 4 or n > 60 unless ``force``.
    """
    if not force and p.s > 2 and (p.s >= 4 or G.n > EXHAUSTIVE_N_LIMIT):
        raise SizeRefused(f"exhaustive K_{{{p.s},{p.t}}} search refused for n={G.n}")
    found = _first_joined_set(G, list(range(G.n)), p.s, p.t, None)
    return (True, None) if found is None else (False, found)


def kst_side_free(G: Graph, A: Iterable[int], B: Iterable[int], s: int, t: int) -> bool:
    """No t vertices of A completely joined to s vertices of B (only A-B edges count)."""
    A = G.check(A)
    B = sorted(G.check(B))
    if len(B) < s:
        return True
    return _first_joined_set(G, B, s, t, A) is None


def gbinom(x: Fraction | int, s: int) -> Fraction:
    """x(x-1)...(x-s+1)/s! for real x, and 0 below s-1 (keeps the function convex)."""
    x = Fraction(x)
    if x < s - 1:
        return Fraction(0)
    num = Fraction(1)
    for i in range(s):
        num *= x - i
    return num / math.factorial(s)


@dataclass(frozen=True)
class CountAudit:
    lhs: Fraction
    rhs: Fraction
    d_A: Fraction
    size_A: int
    size_B: int
    s: int
    t: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "d_A": str(self.d_A),
                "|A|": self.size_A, "|B|": self.size_B, "s": self.s, "t": self.t,
                "holds": self.holds}


def audit_count_inequality(G: Graph, A: Iterable[int], B: Iterable[int], s: int, t: int) -> CountAudit:
    """|A| C(d(A), s) <= t C(|B|, s) for a side-free pair, in exact arithmetic."""
    A = G.check(A)
    Bset = G.check(B)
    found = _first_joined_set(G, sorted(Bset), s, t, A) if len(Bset) >= s else None
    if found is not None:
        raise AuditPreconditionError("graph contains the forbidden K_{s,t} orientation", found)
    if not A:
        d_A = Fraction(0)
    else:
        d_A = Fraction(sum(len(G.adj[v] & Bset) for v in A), len(A))
    audit = CountAudit(len(A) * gbinom(d_A, s), t * Fraction(math.comb(len(Bset), s)),
                       d_A, len(A), len(Bset), s, t)
    assert audit.holds, audit
    return audit


def cor_kst_lower_bound(delta: float, a_size: int, s: int, t: int) -> float:
    if delta < 0 or a_size < 1:
        raise ValueError("need delta >= 0 and a_size >= 1")
    return delta * a_size ** (1 / s) / (math.e * t)


def kst_min_vertices(d: float, s: int, t: int) -> float:
    if d < 0:
        raise ValueError("d must be non-negative")
    return d ** (s / (s - 1)) / (2 * t)
