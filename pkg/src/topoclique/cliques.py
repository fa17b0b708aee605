"""Shared helpers for turning a set of pairwise connections into a certificate."""

from __future__ import annotations

import networkx as nx


def largest_connected_core_set(cores, connected_pairs) -> list[int]:
    """Largest set of cores that are pairwise connected; lexicographically first on ties."""
    cores = sorted(cores)
    if not cores:
        return []
    H = nx.Graph()
    H.add_nodes_from(cores)
    H.add_edges_from((a, b) for a, b in connected_pairs if a in H and b in H)
    best: tuple[int, ...] = (cores[0],)
    for clique in nx.find_cliques(H):
        c = tuple(sorted(clique))
        if len(c) > len(best) or (len(c) == len(best) and c < best):
            best = c
    return list(best)


def splice(path) -> tuple[int, ...]:
    """Loop-erase a walk so every vertex appears once (first-to-last shortcutting)."""
    out: list[int] = []
    pos: dict[int, int] = {}
    for v in path:
        if v in pos:
            cut = pos[v]
            for w in out[cut + 1:]:
                del pos[w]
            del out[cut + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return tuple(out)
