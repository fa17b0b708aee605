import json
import subprocess
import sys

import pytest

from topoclique.cli import main, parse_assignments, resolve_seed
from topoclique.graph import read_edge_list


@pytest.fixture
def k33(tmp_path):
    path = tmp_path / "k33.edges"
    assert main(["generate", "kbip", "a=3", "b=3", "-o", str(path)]) == 0
    return path


def test_oracle_on_k33(k33, capsys):
    assert main(["oracle", "-i", str(k33)]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_find_then_verify(tmp_path, capsys):
    g, c = tmp_path / "g.edges", tmp_path / "g.cert"
    assert main(["generate", "pg2", "q=3", "-o", str(g)]) == 0
    assert main(["find", "-i", str(g), "-o", str(c)]) == 0
    assert main(["verify", "-i", str(g), "-c", str(c)]) == 0
    assert "valid K_" in capsys.readouterr().out


def test_tampered_certificate_names_vertex(tmp_path, capsys):
    g, c = tmp_path / "w.edges", tmp_path / "w.cert"
    main(["generate", "wheel", "rim=4", "-o", str(g)])
    cert = {"cores": [1, 2, 3, 4], "paths": [
        {"pair": [1, 2], "vertices": [1, 2]}, {"pair": [2, 3], "vertices": [2, 3]},
        {"pair": [3, 4], "vertices": [3, 4]}, {"pair": [1, 4], "vertices": [1, 4]},
        {"pair": [1, 3], "vertices": [1, 0, 3]}, {"pair": [2, 4], "vertices": [2, 0, 4]}]}
    c.write_text(json.dumps(cert))
    capsys.readouterr()
    assert main(["verify", "-i", str(g), "-c", str(c)]) == 1
    err = capsys.readouterr().err
    assert "invalid" in err and "vertex 0 " in err


def test_structural_certificate_error_is_invalid(tmp_path, k33):
    c = tmp_path / "bad.cert"
    c.write_text(json.dumps({"cores": [0, 3], "paths": [{"pair": [0, 3], "vertices": [0, 3]},
                                                        {"pair": [3, 0], "vertices": [0, 4, 1, 3]}]}))
    assert main(["verify", "-i", str(k33), "-c", str(c)]) == 1


def test_usage_and_parse_errors(tmp_path, k33):
    assert main([]) == 2
    assert main(["generate", "nosuch"]) == 2
    assert main(["generate", "cycle"]) == 2
    assert main(["generate", "cycle", "n=5", "bogus=1"]) == 2
    junk = tmp_path / "junk.edges"
    junk.write_text("0 x\n")
    assert main(["oracle", "-i", str(junk)]) == 2
    notjson = tmp_path / "c.cert"
    notjson.write_text("{oops")
    assert main(["verify", "-i", str(k33), "-c", str(notjson)]) == 2
    assert main(["verify", "-i", str(k33), "-c", str(tmp_path / "missing")]) == 2
    assert main(["experiment", "growth", "--qs", "2,x"]) == 2
    assert main(["experiment", "growth", "--qs", "4"]) == 2


def test_size_refusal(tmp_path, capsys):
    g = tmp_path / "c.edges"
    main(["generate", "cycle", "n=12", "-o", str(g)])
    assert main(["oracle", "-i", str(g)]) == 3
    assert main(["oracle", "-i", str(g), "--limit", "12"]) == 0
    assert capsys.readouterr().out.strip().endswith("3")


def test_audit_kst(tmp_path, capsys):
    h, c4 = tmp_path / "h.edges", tmp_path / "c4.edges"
    main(["generate", "pg2", "q=2", "-o", str(h)])
    main(["generate", "cycle", "n=4", "-o", str(c4)])
    capsys.readouterr()
    assert main(["audit", "kst", "-i", str(h), "--s", "2", "--t", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["kst_free"] and all(a["holds"] for a in out["count_audits"])
    assert {(a["lhs"], a["rhs"]) for a in out["count_audits"]} == {("21", "42")}  # exact rationals travel as strings
    assert main(["audit", "kst", "-i", str(c4), "--s", "2", "--t", "2"]) == 1
    assert main(["audit", "kst", "-i", str(c4), "--s", "3", "--t", "2"]) == 2


def test_seed_precedence(tmp_path, monkeypatch):
    monkeypatch.delenv("TOPO_CLIQUE_SEED", raising=False)
    assert resolve_seed(None, {}) == 0
    assert resolve_seed(None, {"rng_seed": 4}) == 4
    monkeypatch.setenv("TOPO_CLIQUE_SEED", "9")
    assert resolve_seed(None, {"rng_seed": 4}) == 9
    assert resolve_seed(2, {"rng_seed": 4}) == 2
    monkeypatch.setenv("TOPO_CLIQUE_SEED", "nine")
    g = tmp_path / "g.edges"
    main(["generate", "cycle", "n=5", "-o", str(g)])
    assert main(["find", "-i", str(g)]) == 2


def test_params_file_and_report(tmp_path):
    g, c, r = tmp_path / "g.edges", tmp_path / "g.cert", tmp_path / "rep.json"
    main(["generate", "regular", "n=30", "r=3", "--seed", "1", "-o", str(g)])
    params = tmp_path / "p.conf"
    params.write_text("# practical profile\neps1 = 0.2\nsparse.path_cap = 12\nrng_seed = 3\n")
    assert main(["find", "-i", str(g), "-o", str(c), "--params", str(params), "--report", str(r)]) == 0
    meta = json.loads(c.read_text())["meta"]
    assert meta["seed"] == 3 and meta["params"]["eps1"] == 0.2 and meta["params"]["sparse"] == {"path_cap": 12}
    assert json.loads(r.read_text())["order"] >= 2
    params.write_text("unknown_key = 1\n")
    assert main(["find", "-i", str(g), "--params", str(params)]) == 2
    assert parse_assignments(["a.b=1", "c=x"]) == {"a": {"b": 1}, "c": "x"}


def test_generate_seed_changes_graph(tmp_path):
    a, b = tmp_path / "a.edges", tmp_path / "b.edges"
    main(["generate", "regular", "n=20", "r=3", "--seed", "1", "-o", str(a)])
    main(["generate", "regular", "n=20", "r=3", "--seed", "2", "-o", str(b)])
    assert read_edge_list(a) != read_edge_list(b)


def test_experiment_writes_both_tables(tmp_path):
    stem = tmp_path / "growth"
    assert main(["experiment", "growth", "--qs", "2,3", "-o", str(stem)]) == 0
    rows = json.loads((tmp_path / "growth.json").read_text())
    assert [r["q"] for r in rows] == [2, 3]
    assert (tmp_path / "growth.csv").read_text().startswith("q,n,d,order")


def test_module_entry_point_is_byte_stable(tmp_path):
    g = tmp_path / "g.edges"
    main(["generate", "blowup", "h=6", "r=3", "b=2", "-o", str(g)])
    outs = []
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "topoclique", "find", "-i", str(g), "--seed", "7"],
                              capture_output=True, text=True, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1] and json.loads(outs[0])["meta"]["seed"] == 7
