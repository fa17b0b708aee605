"""The fixed graph corpus used by the acceptance suite and the corpus script."""

from __future__ import annotations

from typing import Callable

from . import generators as gen
from .graph import Graph


def _entries() -> list[tuple[str, Callable[[], Graph]]]:
    out: list[tuple[str, Callable[[], Graph]]] = []
    for q in (2, 3, 5, 7, 11, 13):
        out.append((f"pg2_q{q}", lambda q=q: gen.incidence_graph_pg2(q)))
    for d, c in ((4, 2), (6, 2), (8, 3), (10, 2)):
        out.append((f"jung_d{d}_x{c}", lambda d=d, c=c: gen.jung_union(d, c)[0]))
    for h, r, b, s in ((6, 3, 2, 0), (8, 3, 2, 1), (10, 4, 2, 2), (6, 2, 3, 3)):
        out.append((f"blowup_h{h}_r{r}_b{b}_s{s}", lambda h=h, r=r, b=b, s=s: gen.counterexample_blowup(h, r, b, s)))
    for n, r, s in ((8, 3, 0), (10, 3, 1), (20, 3, 2), (30, 3, 3), (40, 4, 4), (50, 3, 5), (24, 5, 6)):
        out.append((f"regular_n{n}_r{r}_s{s}", lambda n=n, r=r, s=s: gen.random_regular(n, r, s)))
    for n, p, s in ((9, 0.5, 0), (10, 0.4, 1), (25, 0.2, 2), (30, 0.15, 3), (40, 0.1, 4), (60, 0.08, 5)):
        out.append((f"gnp_n{n}_p{p}_s{s}", lambda n=n, p=p, s=s: gen.gnp(n, p, s)))
    for n in range(1, 8):
        out.append((f"K{n}", lambda n=n: gen.complete(n)))
    for n in range(3, 9):
        out.append((f"C{n}", lambda n=n: gen.cycle(n)))
    for n in (2, 3, 5):
        out.append((f"P{n}", lambda n=n: gen.path_graph(n)))
    out += [
        ("K2_3", lambda: gen.complete_bipartite(2, 3)),
        ("K3_3", lambda: gen.complete_bipartite(3, 3)),
        ("K2_4", lambda: gen.complete_bipartite(2, 4)),
        ("K1_5", lambda: gen.star(5)),
        ("petersen", gen.petersen),
        ("grid_3x3", lambda: gen.grid(3, 3)),
        ("grid_4x5", lambda: gen.grid(4, 5)),
        ("Q3", lambda: gen.hypercube(3)),
        ("Q4", lambda: gen.hypercube(4)),
        ("wheel_5", lambda: gen.wheel(5)),
        ("wheel_6", lambda: gen.wheel(6)),
        ("tree_2_3", lambda: gen.complete_ary_tree(2, 3)),
        ("edgeless_5", lambda: Graph.empty(5)),
    ]
    return out


CORPUS = _entries()
NAMES = [name for name, _ in CORPUS]


def corpus_graphs():
    """Yield (name, graph) in a fixed order."""
    for name, build in CORPUS:
        yield name, build()
