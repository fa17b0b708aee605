import math
from itertools import combinations

import pytest

from topoclique import generators as gen
from topoclique.graph import Graph, average_degree
from topoclique.highdeg import (
    HighDegConfig, HighDegPlan, StarConstructionError, StarSystem, build_star_system, choose_core_candidates,
    highdeg_route, reduce_max_degree, run_algorithm_p, split_by_degree,
)
from topoclique.verify import verify_subdivision


def _plan(**kw):
    base = dict(mode="practical", ell=1.0, m=1.0, delta=1.0, core_count=4, star_size=3, lprime_deg_cap=10,
                path_cap=8, discard_cap=10.0, target=2)
    base.update(kw)
    return HighDegPlan(**base)


def test_split_by_degree():
    K4 = gen.complete(4)
    assert split_by_degree(K4, 3) == (frozenset(range(4)), frozenset())
    assert split_by_degree(K4, 4) == (frozenset(), frozenset(range(4)))
    L, rest = split_by_degree(gen.star(9), 5)
    assert L == {0} and rest == set(range(1, 10))


def test_paper_plan_formulas():
    cfg = HighDegConfig(s=2, t=2, eps2=0.1, c0=0.5, mode="paper")
    n, d = 10_000, 20.0
    p = cfg.plan(n, d)
    m = math.log(15 * n / (0.1 * d ** 2))
    assert p.m == pytest.approx(m)
    assert p.ell == pytest.approx(0.5 * d)
    assert p.delta == pytest.approx(max(d / 8, 0.5 * d * m ** 20))
    assert p.star_size == math.ceil(p.delta / 2)
    assert p.discard_cap == pytest.approx(p.delta / 4)
    assert p.core_count == math.floor(2 * p.ell)
    assert p.path_cap == math.floor(2 * m ** 4)
    # recomputed per call, never cached
    assert cfg.plan(2 * n, d).delta > p.delta
    assert HighDegConfig(delta=7.0).plan(n, d).delta == 7.0


def test_reduce_without_high_vertices_is_identity():
    G = gen.cycle(100)
    red = reduce_max_degree(G, 2.0, HighDegConfig(), delta=3)
    assert red is not None and red.graph == G and red.checks["removed"] == 0


def test_reduce_removes_apex():
    edges = list(gen.complete(6).edges())
    edges += [(i, i + 1) for i in range(6, 55)]
    edges += [(56, i) for i in range(6, 56)]
    G = Graph.from_edges(57, edges)
    d = float(average_degree(G))
    assert d == 4
    red = reduce_max_degree(G, d, HighDegConfig(), delta=10)
    assert red is not None
    assert red.old_ids == tuple(range(56))
    assert red.graph.edge_count == 15 + 49
    assert red.checks["min_degree_ok"] and red.checks["max_degree_ok"]


def test_reduce_reports_failure_as_absent():
    assert reduce_max_degree(gen.complete(4), 3.0, HighDegConfig(), delta=10) is None


def test_star_system_examples(heawood):
    K = gen.star(10)
    st = build_star_system(K, [0], 5, 1)
    assert st.s1[0] == {1, 2, 3, 4, 5}
    with pytest.raises(StarConstructionError) as exc:
        build_star_system(K, [0], 5, 0)
    assert exc.value.vertex == 0
    # point 0 and a line missing it sit at distance 3 in the Heawood graph
    line = next(v for v in range(7, 14) if not heawood.has_edge(0, v))
    st = build_star_system(heawood, [0, line], 3, 1)
    assert st.s1[0] == set(heawood.nbrs[0]) and st.s1[line] == set(heawood.nbrs[line])


def test_algorithm_p_two_cores_connect():
    G = gen.incidence_graph_pg2(3)
    stars = build_star_system(G, [0, 1], 2, 2)
    res = run_algorithm_p(G, stars, _plan())
    assert res.certificate is not None and res.certificate.order == 2
    assert verify_subdivision(G, res.certificate).ok


def test_algorithm_p_components_give_nothing():
    G = gen.disjoint_union(gen.cycle(6), gen.cycle(6))
    stars = build_star_system(G, [0, 6], 2, 2)
    res = run_algorithm_p(G, stars, _plan())
    assert res.certificate is None and res.diagnostics["connections"] == 0


def test_algorithm_p_heawood_four_cores(heawood):
    # lexicographically first quadrangle: four points, no three on a common line
    cores = next(
        list(Q) for Q in combinations(range(7), 4)
        if all(not (heawood.adj[a] & heawood.adj[b] & heawood.adj[c]) for a, b, c in combinations(Q, 3))
    )
    stars = build_star_system(heawood, cores, 3, 4)
    res = run_algorithm_p(heawood, stars, _plan(star_size=3, path_cap=6, discard_cap=3))
    assert res.certificate is not None and res.certificate.order >= 3
    assert verify_subdivision(heawood, res.certificate).ok


def test_algorithm_p_discard_rule():
    G = gen.incidence_graph_pg2(5)
    stars = build_star_system(G, choose_core_candidates(G, range(31), 8), 4, 8)
    res = run_algorithm_p(G, stars, _plan(star_size=4, discard_cap=1, path_cap=10))
    st = res.state
    for c in stars.cores:
        if c not in st.discarded:
            assert st.usage_count[c] <= 1
    assert res.diagnostics["discards"]
    attempted = math.comb(len(stars.cores), 2) * res.diagnostics["passes"]
    assert len(st.used) <= attempted * 10


def test_highdeg_route_on_incidence_graphs():
    for q in (3, 5, 7):
        G = gen.incidence_graph_pg2(q)
        res = highdeg_route(G, q + 1.0, HighDegConfig())
        assert res.certificate is not None and verify_subdivision(G, res.certificate).ok
        again = highdeg_route(G, q + 1.0, HighDegConfig())
        assert again.certificate.dumps() == res.certificate.dumps()


def test_paper_mode_aborts_cleanly():
    G = gen.incidence_graph_pg2(3)
    res = highdeg_route(G, 4.0, HighDegConfig(mode="paper"))
    assert res.certificate is None and "reason" in res.diagnostics


def test_star_system_members():
    st = StarSystem([0, 5], {0: frozenset({1, 2}), 5: frozenset({2, 3})})
    assert st.members() == {1: [0], 2: [0, 5], 3: [5]}
