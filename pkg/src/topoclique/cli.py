"""Command-line front end.

Exit codes: 0 success, 1 invalid certificate (or a forbidden K_{s,t} found by
``audit``), 2 usage or parse error, 3 size refusal.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import generators as gen
from .graph import GraphInputError, is_bipartite, read_edge_list, two_coloring, write_edge_list
from .kst import AuditPreconditionError, KstParams, SizeRefused, audit_count_inequality, is_kst_free
from .pipeline import PipelineConfig, experiment_linear_growth, run, table_csv, table_json
from .verify import CertificateError, SubdivisionCertificate, oracle_max_subdivision, verify_subdivision

EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3
SEED_ENV = "TOPO_CLIQUE_SEED"

log = logging.getLogger("topoclique")


class UsageError(Exception):
    pass


# family -> (builder, required params, optional params with defaults)
FAMILIES = {
    "pg2": (lambda p: gen.incidence_graph_pg2(p["q"]), ["q"], {}),
    "jung": (lambda p: gen.jung_union(p["d"], p["copies"])[0], ["d"], {"copies": 1}),
    "blowup": (lambda p: gen.counterexample_blowup(p["h"], p["r"], p["b"], p["seed"]), ["h", "r", "b"], {"seed": 0}),
    "regular": (lambda p: gen.random_regular(p["n"], p["r"], p["seed"]), ["n", "r"], {"seed": 0}),
    "gnp": (lambda p: gen.gnp(p["n"], p["p"], p["seed"]), ["n", "p"], {"seed": 0}),
    "complete": (lambda p: gen.complete(p["n"]), ["n"], {}),
    "kbip": (lambda p: gen.complete_bipartite(p["a"], p["b"]), ["a", "b"], {}),
    "cycle": (lambda p: gen.cycle(p["n"]), ["n"], {}),
    "path": (lambda p: gen.path_graph(p["n"]), ["n"], {}),
    "star": (lambda p: gen.star(p["leaves"]), ["leaves"], {}),
    "grid": (lambda p: gen.grid(p["rows"], p["cols"]), ["rows", "cols"], {}),
    "petersen": (lambda p: gen.petersen(), [], {}),
    "hypercube": (lambda p: gen.hypercube(p["dim"]), ["dim"], {}),
    "wheel": (lambda p: gen.wheel(p["rim"]), ["rim"], {}),
    "tree": (lambda p: gen.complete_ary_tree(p["arity"], p["depth"]), ["arity", "depth"], {}),
}


def _scalar(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_assignments(items) -> dict:
    """``key=value`` strings into a dict; dotted keys nest (``sparse.r=2``)."""
    out: dict = {}
    for item in items:
        item = item.strip()
        if not item or item.startswith("#"):
            continue
        if "=" not in item:
            raise UsageError(f"expected key=value, got {item!r}")
        key, val = (x.strip() for x in item.split("=", 1))
        node = out
        *parents, leaf = key.split(".")
        for p in parents:
            node = node.setdefault(p, {})
        node[leaf] = _scalar(val)
    return out


def load_params(path) -> dict:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: {exc}") from None
    return parse_assignments(text.splitlines())


def resolve_seed(flag, params: dict) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return int(params.get("rng_seed", 0))


def build_config(args) -> PipelineConfig:
    params = load_params(args.params) if getattr(args, "params", None) else {}
    if getattr(args, "mode", None):
        params["mode"] = args.mode
    params["rng_seed"] = resolve_seed(getattr(args, "seed", None), params)
    try:
        return PipelineConfig.from_dict(params)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad configuration: {exc}") from None


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ------------------------------------------------------------------ commands

def cmd_generate(args) -> int:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(sorted(FAMILIES))}")
    build, required, optional = FAMILIES[args.family]
    params = {**optional, **parse_assignments(args.params)}
    if args.seed is not None and "seed" in optional:
        params["seed"] = args.seed
    missing = [k for k in required if k not in params]
    if missing:
        raise UsageError(f"{args.family} needs {', '.join(missing)}")
    extra = set(params) - set(required) - set(optional)
    if extra:
        raise UsageError(f"{args.family} does not take {', '.join(sorted(extra))}")
    try:
        G = build(params)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"cannot build {args.family}: {exc}") from None
    comment = f"{args.family} " + " ".join(f"{k}={params[k]}" for k in sorted(params))
    if args.output in (None, "-"):
        from .graph import format_edge_list
        sys.stdout.write(format_edge_list(G, comment))
    else:
        write_edge_list(G, args.output, comment)
    return 0


def cmd_find(args) -> int:
    cfg = build_config(args)
    G = read_edge_list(args.input)
    rep = run(G, cfg)
    _write(args.output, rep.certificate.dumps())
    if args.report:
        Path(args.report).write_text(json.dumps(rep.to_json(), indent=1, sort_keys=True, default=str) + "\n")
    print(f"order {rep.order} via {rep.certificate.meta.get('route')}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    G = read_edge_list(args.input)
    try:
        text = Path(args.cert).read_text()
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.cert}: not JSON: {exc}") from None
    try:
        cert = SubdivisionCertificate.from_json(data)
        verdict = verify_subdivision(G, cert)
    except CertificateError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not verdict.ok:
        print(f"invalid: {verdict.reason}", file=sys.stderr)
        return EXIT_INVALID
    print(f"valid K_{verdict.order} subdivision")
    return 0


def cmd_oracle(args) -> int:
    G = read_edge_list(args.input)
    order, cert = oracle_max_subdivision(G, args.limit)
    print(order)
    if args.output:
        _write(args.output, cert.dumps())
    return 0


def cmd_audit_kst(args) -> int:
    G = read_edge_list(args.input)
    try:
        p = KstParams(args.s, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    free, wit = is_kst_free(G, p, force=args.force)
    out: dict = {"s": args.s, "t": args.t, "kst_free": free}
    if not free:
        out["witness"] = [list(wit[0]), list(wit[1])]
    if is_bipartite(G) and G.n:
        col = two_coloring(G)
        X = [v for v in range(G.n) if col[v] == 0]
        Y = [v for v in range(G.n) if col[v] == 1]
        audits = []
        for A, B in ((X, Y), (Y, X)):
            try:
                audits.append(audit_count_inequality(G, A, B, args.s, args.t).to_json())
            except AuditPreconditionError as exc:
                audits.append({"skipped": str(exc), "witness": [list(w) for w in exc.witness]})
        out["count_audits"] = audits
    print(json.dumps(out, indent=1, sort_keys=True))
    return 0 if free else EXIT_INVALID


def cmd_experiment_growth(args) -> int:
    cfg = build_config(args)
    try:
        qs = [int(x) for x in args.qs.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--qs must be comma-separated integers, got {args.qs!r}") from None
    try:
        rows = experiment_linear_growth(qs, cfg, with_runtime=args.runtime)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output in (None, "-"):
        sys.stdout.write(table_csv(rows))
        return 0
    base = Path(args.output)
    if base.suffix in (".json", ".csv"):
        base = base.with_suffix("")
    base.with_suffix(".json").write_text(table_json(rows))
    base.with_suffix(".csv").write_text(table_csv(rows))
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="topoclique", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a graph family as an edge list")
    g.add_argument("family", help=", ".join(sorted(FAMILIES)))
    g.add_argument("params", nargs="*", help="key=value family parameters")
    g.add_argument("-o", "--output")
    g.add_argument("--seed", type=int)
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("find", help="run the pipeline and write a certificate")
    f.add_argument("-i", "--input", required=True)
    f.add_argument("-o", "--output")
    f.add_argument("--mode", choices=["practical", "paper"])
    f.add_argument("--seed", type=int)
    f.add_argument("--params", help="config file (key=value lines or JSON)")
    f.add_argument("--report", help="also write the full run report as JSON")
    f.set_defaults(func=cmd_find)

    v = sub.add_parser("verify", help="check a certificate against a graph")
    v.add_argument("-i", "--input", required=True)
    v.add_argument("-c", "--cert", required=True)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact maximum clique subdivision order (tiny graphs)")
    o.add_argument("-i", "--input", required=True)
    o.add_argument("--limit", type=int, default=10)
    o.add_argument("-o", "--output", help="write the witness certificate")
    o.set_defaults(func=cmd_oracle)

    a = sub.add_parser("audit", help="extremal-count audits")
    asub = a.add_subparsers(dest="audit", required=True)
    ak = asub.add_parser("kst", help="K_{s,t}-freeness and the counting inequality")
    ak.add_argument("-i", "--input", required=True)
    ak.add_argument("--s", type=int, required=True)
    ak.add_argument("--t", type=int, required=True)
    ak.add_argument("--force", action="store_true", help="allow exhaustive search on large inputs")
    ak.set_defaults(func=cmd_audit_kst)

    e = sub.add_parser("experiment", help="experiments")
    esub = e.add_subparsers(dest="experiment", required=True)
    eg = esub.add_parser("growth", help="order versus degree on projective-plane incidence graphs")
    eg.add_argument("--qs", default="2,3,5,7,11,13")
    eg.add_argument("-o", "--output", help="output stem; writes .json and .csv")
    eg.add_argument("--mode", choices=["practical", "paper"])
    eg.add_argument("--seed", type=int)
    eg.add_argument("--params")
    eg.add_argument("--runtime", action="store_true", help="add a wall-clock column (not reproducible)")
    eg.set_defaults(func=cmd_experiment_growth)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SizeRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (UsageError, GraphInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
