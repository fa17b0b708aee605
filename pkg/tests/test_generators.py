import networkx as nx
import pytest

from conftest import to_nx
from topoclique import generators as gen
from topoclique.graph import is_bipartite
from topoclique.kst import KstParams, is_kst_free
from topoclique.verify import oracle_max_subdivision


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13])
def test_incidence_graph_invariants(q):
    G = gen.incidence_graph_pg2(q)
    N = q * q + q + 1
    assert G.n == 2 * N
    assert is_bipartite(G)
    assert all(G.degree(v) == q + 1 for v in range(G.n))
    assert all(u < N <= v for u, v in G.edges())
    assert is_kst_free(G, KstParams(2, 2))[0]


def test_heawood_is_the_heawood_graph():
    G = gen.incidence_graph_pg2(2)
    H = to_nx(G)
    assert nx.girth(H) == 6
    assert nx.is_isomorphic(H, nx.heawood_graph())
    assert nx.girth(to_nx(gen.incidence_graph_pg2(3))) == 6


@pytest.mark.parametrize("q", [0, 1, 4, 6, 9])
def test_incidence_graph_rejects_non_primes(q):
    with pytest.raises(ValueError):
        gen.incidence_graph_pg2(q)


def test_jung_union():
    G, d = gen.jung_union(4, 1)
    assert G == gen.complete_bipartite(2, 2) and d == 2
    G, d = gen.jung_union(6, 3)
    assert G.n == 18 and all(G.degree(v) == 3 for v in range(18)) and d == 3
    assert oracle_max_subdivision(gen.jung_union(6, 1)[0])[0] == 4
    for bad in ((3, 1), (0, 1), (4, 0)):
        with pytest.raises(ValueError):
            gen.jung_union(*bad)


def test_blowup():
    G = gen.counterexample_blowup(4, 2, 1, rng_seed=3)
    assert nx.is_isomorphic(to_nx(G), nx.cycle_graph(4))
    G = gen.counterexample_blowup(4, 2, 3, rng_seed=3)
    assert G.n == 12 and all(G.degree(v) == 6 for v in range(12))
    for seed in range(5):
        G = gen.counterexample_blowup(10, 3, 4, rng_seed=seed)
        for x in range(10):
            cls = set(range(4 * x, 4 * x + 4))
            assert all(not (G.adj[v] & cls) for v in cls)
        assert all(G.degree(v) == 12 for v in range(G.n))
    with pytest.raises(ValueError):
        gen.counterexample_blowup(5, 3, 2)


def test_random_regular():
    assert gen.random_regular(6, 5, rng_seed=11) == gen.complete(6)
    for n, r in ((10, 3), (30, 4), (51, 2), (40, 7)):
        G = gen.random_regular(n, r, rng_seed=1)
        assert all(G.degree(v) == r for v in range(n))
    assert gen.random_regular(30, 3, 7) == gen.random_regular(30, 3, 7)
    assert gen.random_regular(30, 3, 7) != gen.random_regular(30, 3, 8)
    with pytest.raises(ValueError):
        gen.random_regular(5, 3)


def test_gnp():
    assert gen.gnp(5, 0.0).edge_count == 0
    assert gen.gnp(5, 1.0) == gen.complete(5)
    assert gen.gnp(40, 0.2, 3) == gen.gnp(40, 0.2, 3)
    pairs = 200 * 199 // 2
    m = gen.gnp(200, 0.1, 0).edge_count
    assert abs(m - 0.1 * pairs) < 4 * (pairs * 0.1 * 0.9) ** 0.5
    with pytest.raises(ValueError):
        gen.gnp(5, 1.5)


def test_named_graphs_against_networkx():
    pairs = [
        (gen.petersen(), nx.petersen_graph()),
        (gen.hypercube(3), nx.hypercube_graph(3)),
        (gen.grid(3, 4), nx.grid_2d_graph(3, 4)),
        (gen.wheel(5), nx.wheel_graph(6)),
        (gen.complete_ary_tree(2, 3), nx.balanced_tree(2, 3)),
        (gen.star(4), nx.star_graph(4)),
        (gen.complete_bipartite(2, 3), nx.complete_bipartite_graph(2, 3)),
    ]
    for ours, theirs in pairs:
        assert nx.is_isomorphic(to_nx(ours), theirs)
