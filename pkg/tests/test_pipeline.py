import csv
import io
import json
from fractions import Fraction

import pytest

from topoclique import generators as gen
from topoclique.graph import Graph
from topoclique.pipeline import (
    GROWTH_COLUMNS, ROUTES, PipelineConfig, experiment_linear_growth, run, table_csv, table_json,
)
from topoclique.verify import oracle_max_subdivision, verify_subdivision


def test_config_validation():
    for bad in ({"eps1": 0.0}, {"eps1": 0.5}, {"eps2": 1.0}, {"mode": "fast"}, {"s": 3, "t": 2},
                {"routes": ("nope",)}):
        with pytest.raises(ValueError):
            PipelineConfig(**bad)
    with pytest.raises(ValueError, match="unknown config keys"):
        PipelineConfig.from_dict({"epsilon": 0.1})
    cfg = PipelineConfig.from_dict({"eps1": 0.2, "sparse": {"r": 2}})
    assert cfg.to_json()["sparse"] == {"r": 2}
    assert PipelineConfig.from_dict(json.loads(json.dumps(cfg.to_json()))) == cfg


def test_edgeless_gives_order_one():
    rep = run(Graph.empty(5))
    assert rep.order == 1 and rep.case == "degenerate"
    assert verify_subdivision(Graph.empty(5), rep.certificate).ok


def test_k6():
    G = gen.complete(6)
    rep = run(G)
    assert rep.order >= 4
    assert rep.order <= oracle_max_subdivision(G)[0] == 6
    assert verify_subdivision(G, rep.certificate).ok


def test_heawood_report(heawood):
    rep = run(heawood)
    assert verify_subdivision(heawood, rep.certificate).ok
    assert rep.stages["kst_free"] is True
    assert rep.stages["halving"]["ok"] and rep.stages["extraction"]["ok"]
    assert Fraction(rep.d) == 3
    if rep.stages["dichotomy"]["many_high"]:
        assert rep.case == rep.paper_case == "highdeg"
    else:
        assert rep.paper_case == "sparse"
    assert set(rep.routes) == set(ROUTES)
    meta = rep.certificate.meta
    assert meta["mode"] == "practical" and meta["seed"] == 0 and meta["params"]["eps1"] == 0.1
    # report survives a JSON round trip
    json.dumps(rep.to_json(), default=str)


def test_stage_contracts_on_union_of_cliques():
    G = gen.disjoint_union(*[gen.complete(5) for _ in range(3)])
    rep = run(G)
    assert rep.stages["halving"]["ok"] and rep.stages["extraction"]["ok"]
    assert rep.order >= 3 and verify_subdivision(G, rep.certificate).ok


def test_route_restriction():
    G = gen.incidence_graph_pg2(3)
    rep = run(G, PipelineConfig(routes=("sparse",)))
    assert set(rep.routes) == {"sparse"}
    assert rep.certificate.meta["route"] in ("sparse", "trivial")


def test_determinism():
    G = gen.random_regular(40, 4, rng_seed=2)
    a = run(G, PipelineConfig(rng_seed=5))
    b = run(G, PipelineConfig(rng_seed=5))
    assert a.certificate.dumps() == b.certificate.dumps()
    assert json.dumps(a.to_json(), default=str, sort_keys=True) == json.dumps(b.to_json(), default=str, sort_keys=True)


def test_paper_mode_still_verifies():
    G = gen.incidence_graph_pg2(3)
    rep = run(G, PipelineConfig(mode="paper"))
    assert rep.certificate.meta["mode"] == "paper"
    assert verify_subdivision(G, rep.certificate).ok
    assert PipelineConfig().paper_ladder()["d0"] == pytest.approx((100 / 0.01) ** 2)


def test_growth_table_shape():
    rows = experiment_linear_growth([2, 3])
    assert [r["d"] for r in rows] == [3, 4]
    assert rows[0]["n"] == 14
    for r in rows:
        assert r["order_over_d"] == round(r["order"] / r["d"], 6)
    parsed = list(csv.DictReader(io.StringIO(table_csv(rows))))
    assert tuple(parsed[0]) == GROWTH_COLUMNS
    assert json.loads(table_json(rows)) == rows
    timed = experiment_linear_growth([2], with_runtime=True)
    assert "runtime_s" in timed[0] and "runtime_s" in table_csv(timed)
