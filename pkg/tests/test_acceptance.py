"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import filecmp
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "scripts"))

from run_corpus import run_corpus  # noqa: E402
from topoclique import generators as gen  # noqa: E402
from topoclique.corpus import CORPUS  # noqa: E402
from topoclique.expander import (  # noqa: E402
    ExpanderParams, diameter_property_samples, epsilon, extract_expander, verify_expander_exact,
)
from topoclique.graph import Graph, average_degree, bipartite_half  # noqa: E402
from topoclique.kst import AuditPreconditionError, audit_count_inequality  # noqa: E402
from topoclique.pipeline import PipelineConfig, experiment_linear_growth  # noqa: E402

BASELINE = ROOT / "tests" / "data" / "growth_baseline.json"


LINES: list[str] = []  # echoed in the pytest terminal summary by conftest


def report(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} ({detail})"
    LINES.append(line)
    print(line, flush=True)


_cache: dict = {}


def corpus_rows():
    if "rows" not in _cache:
        t0 = time.perf_counter()
        rows, _ = run_corpus()
        _cache["rows"] = rows
        _cache["seconds"] = time.perf_counter() - t0
    return _cache["rows"], _cache["seconds"]


# ------------------------------------------------------------------ criteria

def check_certificate_validity():
    rows, secs = corpus_rows()
    bad = [r["name"] for r in rows if not r["verified"]]
    ok = len(rows) >= 50 and not bad and secs < 300
    return ok, f"{len(rows)} graphs, {len(bad)} failures, {secs:.1f}s"


def check_oracle_consistency():
    rows, _ = corpus_rows()
    small = [r for r in rows if r["oracle"] is not None]
    bad = [r["name"] for r in small if r["order"] > r["oracle"] or not r["oracle_witness_ok"]]
    spots = {"K5": 5, "K3_3": 4, "C5": 3}
    got = {r["name"]: r["oracle"] for r in small if r["name"] in spots}
    ok = not bad and got == spots
    return ok, f"{len(small)} graphs with n<=10, {len(bad)} failures, spot values {got}"


def _random_graphs(count=50):
    out = []
    for i in range(count):
        rng = random.Random(1000 + i)
        n = rng.randint(8, 200)
        if i % 2:
            r = rng.choice([2, 3, 4, 5, 6])
            if (n * r) % 2:
                n += 1
            out.append(gen.random_regular(n, r, rng_seed=i))
        else:
            out.append(gen.gnp(n, min(1.0, rng.uniform(1.5, 10) / n), rng_seed=i))
    return out


def check_expander_contracts():
    fails, exact = 0, 0
    for G in _random_graphs():
        res = extract_expander(G, ExpanderParams(0.2, 2.0))
        H = res.graph
        dG, dH = average_degree(G), average_degree(H)
        if not (isinstance(dH, Fraction) and 2 * dH >= dG and 2 * H.min_degree() >= dH):
            fails += 1
        if H.n <= 18 and res.certified is not None:
            exact += 1
            if not verify_expander_exact(H, res.certified).is_expander:
                fails += 1
    return fails == 0, f"50 graphs, {exact} exact re-checks, {fails} failures"


def check_diameter_property():
    cfg = PipelineConfig()
    graphs = probes = fails = 0
    for _, build in CORPUS:
        G = build()
        if G.edge_count == 0:
            continue
        G1, _ = bipartite_half(G)
        k = cfg.eps2 * float(average_degree(G1)) ** 2
        res = extract_expander(G1, ExpanderParams(2 * cfg.eps1, k), trials=cfg.trials, rng_seed=cfg.rng_seed)
        if res.mode != "exact" or res.certified is None or not res.report.is_expander:
            continue
        graphs += 1
        for s in diameter_property_samples(res.graph, res.certified, configs=100, rng_seed=0):
            probes += 1
            fails += not s["ok"]
    return fails == 0 and graphs > 0, f"{graphs} exactly-certified expanders, {probes} probes, {fails} failures"


def _sample_free_bipartite(rng, s, t):
    while True:
        a, b = rng.randint(2, 20), rng.randint(2, 20)
        p = rng.uniform(0.05, 0.6)
        edges = [(i, a + j) for i in range(a) for j in range(b) if rng.random() < p]
        G = Graph.from_edges(a + b, edges)
        try:
            return audit_count_inequality(G, range(a), range(a, a + b), s, t)
        except AuditPreconditionError:
            continue  # rejection sampling


def check_kst_audit():
    rng = random.Random(7)
    pairs = [(2, 2), (2, 3), (3, 2), (3, 3)]
    fails = 0
    for i in range(200):
        s, t = pairs[i % 4]
        try:
            audit = _sample_free_bipartite(rng, s, t)
            fails += not audit.holds
        except AssertionError:
            fails += 1
    grid_fails = 0
    for k in (1.0, 6.0, 40.0):
        p = ExpanderParams(0.25, k)
        xs = [k / 2 + i * (100 * k - k / 2) / 999 for i in range(1000)]
        vals = [x * epsilon(x, p) for x in xs]
        grid_fails += sum(b < a for a, b in zip(vals, vals[1:]))
    return fails == 0 and grid_fails == 0, f"200 audits, {fails} failures; monotonicity grid {grid_fails} failures"


def check_sparse_ledger():
    rows, _ = corpus_rows()
    total = sum(r["ledger_violations"] for r in rows)
    return total == 0, f"{total} ledger violations across {len(rows)} pipeline runs"


def check_linear_growth():
    t0 = time.perf_counter()
    rows = experiment_linear_growth([2, 3, 5, 7, 11, 13])
    secs = time.perf_counter() - t0
    base = {r["q"]: r for r in json.loads(BASELINE.read_text())}
    orders = [r["order"] for r in rows]
    sqrt_ratios = [r["order_over_sqrt_d"] for r in rows]
    nondecreasing = all(b >= a for a, b in zip(orders, orders[1:]))
    floor_ok = all(r["order_over_d"] >= 0.8 * base[r["q"]]["order_over_d"] for r in rows)
    strictly = all(b > a for a, b in zip(sqrt_ratios, sqrt_ratios[1:]))
    ok = nondecreasing and floor_ok and strictly and secs < 600
    return ok, f"orders {orders}, order/sqrt(d) {sqrt_ratios}, {secs:.1f}s"


def _script_outputs(dest: Path, hashseed: str):
    env = {**os.environ, "PYTHONHASHSEED": hashseed}
    env.pop("TOPO_CLIQUE_SEED", None)
    for script, out in (("run_corpus.py", dest / "corpus"), ("run_growth.py", dest / "growth")):
        subprocess.run([sys.executable, str(ROOT / "scripts" / script), "-o", str(out)],
                       env=env, check=True, capture_output=True)


def check_determinism(tmp: Path):
    a, b = tmp / "a", tmp / "b"
    _script_outputs(a, "1")
    _script_outputs(b, "2")
    names = sorted(p.name for p in (a / "corpus").iterdir())
    _, mismatch, errors = filecmp.cmpfiles(a / "corpus", b / "corpus", names, shallow=False)
    for suffix in (".json", ".csv"):
        if not filecmp.cmp(a / f"growth{suffix}", b / f"growth{suffix}", shallow=False):
            mismatch.append(f"growth{suffix}")
    ok = not mismatch and not errors and len(names) > 50
    return ok, f"{len(names) + 2} files compared, {len(mismatch) + len(errors)} differ"


CRITERIA = [
    (1, "certificate validity over the corpus", check_certificate_validity),
    (2, "oracle consistency", check_oracle_consistency),
    (3, "expander extraction contracts", check_expander_contracts),
    (4, "robust diameter property", check_diameter_property),
    (5, "KST counting audit and epsilon monotonicity", check_kst_audit),
    (6, "sparse ledger invariants", check_sparse_ledger),
    (7, "linear-growth regression", check_linear_growth),
]


@pytest.mark.parametrize("num, title, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn):
    ok, detail = fn()
    report(num, title, ok, detail)
    assert ok, detail


def test_criterion_8_determinism(tmp_path):
    ok, detail = check_determinism(tmp_path)
    report(8, "byte-identical reruns", ok, detail)
    assert ok, detail


if __name__ == "__main__":
    import tempfile

    results = []
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        report(num, title, ok, detail)
        results.append(ok)
    with tempfile.TemporaryDirectory() as tmp:
        ok, detail = check_determinism(Path(tmp))
        report(8, "byte-identical reruns", ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
