"""Command-line driver. Every logarithm used by the toolkit is base 2."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions, embedders, experiments, generators, hypergraph, lll, solver
from .core import EdgeColoring, GraphError, OrderedGraph, SizeLimitError, find_ordered_copy, graph_stats

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

LOG_NOTE = "All logarithms are base 2."


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# I/O helpers


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(text)


def _emit(obj, out: str | None) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, separators=(",", ":"))
    if not text.endswith("\n"):
        text += "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _need(path: str | None, flag: str) -> str:
    if path is None:
        raise UsageError(f"{flag} is required here")
    return path


def _graph(path: str | None, flag: str = "--graph") -> OrderedGraph:
    return OrderedGraph.from_dict(_read_json(_need(path, flag)))


def _coloring(path: str | None, flag: str = "--coloring") -> EdgeColoring:
    return EdgeColoring.from_dict(_read_json(_need(path, flag)))


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(a) -> int:
    fam = a.family
    if fam == "path":
        g = generators.monotone_path(a.n)
    elif fam == "path-power":
        g = generators.path_power(a.n, a.k)
    elif fam == "complete":
        g = generators.complete(a.n)
    elif fam == "empty":
        g = generators.empty(a.n)
    elif fam == "multipartite":
        if not a.parts:
            raise UsageError("--parts is required for multipartite")
        g = generators.complete_multipartite_trivial(a.parts)
    elif fam == "matching":
        g = generators.random_matching(a.n, seed=a.seed)
    elif fam == "vdc":
        g = generators.vdc_matching(a.h)
    elif fam == "vdc-perm":
        _emit(generators.vdc_permutation(a.h).to_dict(), a.out)
        return EXIT_OK
    elif fam == "jumbled":
        g = generators.jumbled_matching(a.t)
    elif fam == "jk":
        g = generators.j_k(a.k)
    elif fam == "tight-path":
        _emit(generators.tight_path_3(a.n).to_dict(), a.out)
        return EXIT_OK
    elif fam == "t-hypergraph":
        if not a.graph:
            raise UsageError("--graph is required for t-hypergraph")
        _emit(generators.t_hypergraph(_graph(a.graph, "--graph")).to_dict(), a.out)
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    _emit(g.to_dict(), a.out)
    return EXIT_OK


def cmd_stats(a) -> int:
    g = _graph(a.inp, "--in")
    _emit(graph_stats(g, cover_cap=a.cap).to_dict(), a.out)
    return EXIT_OK


def cmd_contain(a) -> int:
    pattern, host = _graph(a.pattern, "--pattern"), _graph(a.host, "--host")
    emb = find_ordered_copy(host, pattern, cap=a.cap)
    _emit({"found": emb is not None, "embedding": emb.to_list() if emb else None}, a.out)
    return EXIT_OK


def _ledger_lookup(path: Path, key: str):
    if not path.exists():
        return None
    found = None
    for line in path.read_text().splitlines():
        if line.strip():
            rec = json.loads(line)
            if rec.get("query_hash") == key:
                found = rec
    return found


def cmd_solve(a) -> int:
    targets = [_graph(p) for p in a.target]
    if len(targets) < 2:
        raise UsageError("give one --target per color (at least two)")
    cert_dir = Path(a.cert_dir)
    if a.find_r:
        key = solver.query_hash(targets)
        ledger = Path(a.ledger) if a.ledger else None
        if ledger is not None and not a.force:
            rec = _ledger_lookup(ledger, key)
            if rec is not None:
                checks = [solver.verify_certificate(p) for p in rec["certificates"]]
                if all(checks):
                    rec = dict(rec, cached=True, verification=[v.status for v in checks])
                    _emit(rec, a.out)
                    return EXIT_OK
                print("cached certificate failed verification; searching again", file=sys.stderr)
        res = solver.ramsey_number(targets, start_N=a.start, cap_edges=a.cap_edges, threads=a.threads)
        paths = []
        cert_dir.mkdir(parents=True, exist_ok=True)
        for tag, cert in (("avoiding", res.avoiding), ("unavoidable", res.unavoidable)):
            if cert is not None:
                p = cert_dir / f"{key}-N{cert.query.N}-{tag}.json"
                cert.save(p)
                paths.append(str(p))
        rec = {
            "query_hash": key,
            "value": res.value,
            "lower": res.lower,
            "upper": res.upper,
            "certificates": paths,
        }
        if ledger is not None:
            with ledger.open("a") as fh:
                fh.write(json.dumps(rec) + "\n")
        _emit(rec, a.out)
        return EXIT_OK if res.closed else EXIT_DOMAIN
    if a.N is None:
        raise UsageError("give --N or --find-r")
    cert = solver.decide(solver.RamseyQuery(targets, a.N), cap_edges=a.cap_edges, threads=a.threads)
    if a.emit_cert:
        cert.save(a.emit_cert)
    _emit({"N": a.N, "verdict": cert.verdict, "stats": cert.stats.to_dict()}, a.out)
    return EXIT_OK


def cmd_oracle(a) -> int:
    targets = [_graph(p) for p in a.target]
    hit = solver.brute_force_oracle(targets, a.N)
    _emit({"N": a.N, "verdict": "unavoidable" if hit else "avoidable"}, a.out)
    return EXIT_OK


def cmd_sat(a) -> int:
    targets = [_graph(p) for p in a.target]
    q = solver.RamseyQuery(targets, a.N)
    if a.model:
        text = Path(a.model).read_text()
        c = solver.coloring_from_model(a.N, solver.parse_dimacs_model(text))
        ok, msg = solver.witness_avoids(c, targets)
        cert = solver.Certificate(q, "avoidable", c)
        if not ok:
            print(f"model does not avoid the targets: {msg}", file=sys.stderr)
            return EXIT_DOMAIN
        _emit(cert.to_dict(), a.out)
        return EXIT_OK
    _emit(solver.sat_export(q), a.out)
    return EXIT_OK


def cmd_verify(a) -> int:
    v = solver.verify_certificate(a.cert)
    _emit({"ok": v.ok, "status": v.status, "detail": v.detail}, a.out)
    return EXIT_OK if v.ok else EXIT_DOMAIN


def cmd_construct(a) -> int:
    kind = a.kind
    if kind == "es-path":
        c = constructions.es_path_coloring(a.n, a.q, cap=a.cap)
    elif kind == "recursive":
        c = constructions.recursive_matching_lb(_graph(a.matching, "--matching"), _coloring(a.base, "--base"), a.depth, a.k, cap=a.cap)
    elif kind == "random-blowup":
        c, ok = constructions.random_blowup_lb(_graph(a.matching, "--matching"), a.s, a.t, seed=a.seed, cap=a.cap)
        if not ok:
            print("note: sampled coloring contains the matching", file=sys.stderr)
    elif kind == "product":
        c = constructions.product_lb_coloring(_coloring(a.base, "--base"), _graph(a.graph, "--graph"), a.s, cap=a.cap)
    elif kind == "assembly":
        c = constructions.offdiagonal_assembly(_coloring(a.base, "--base"), a.block, cap=a.cap)
    else:  # pragma: no cover
        raise UsageError(f"unknown construction {kind}")
    _emit(c.to_dict(), a.out)
    return EXIT_OK


def _host(path: str, flag: str):
    """A coloring file, or a graph file read as the red graph."""
    d = _read_json(_need(path, flag))
    return OrderedGraph.from_dict(d) if "edges" in d else EdgeColoring.from_dict(d)


def cmd_embed(a) -> int:
    c = _host(a.coloring, "--coloring")
    if isinstance(c, OrderedGraph) and a.procedure not in ("lemma", "sparse"):
        raise UsageError(f"procedure {a.procedure} needs a coloring file")
    proc = a.procedure
    if proc == "path-clique":
        w = embedders.path_vs_clique(c, a.m, a.n)
    elif proc == "multipartite":
        w = embedders.match_vs_multipartite(c, _graph(a.matching, "--matching"), a.chi, a.part)
    elif proc == "bandwidth":
        w = embedders.bandwidth_embed(c, _graph(a.matching, "--matching"), a.k)
    elif proc == "lemma":
        w = embedders.greedy_embed_or_sparse(c, _graph(a.graph, "--graph"), Fraction(a.c), a.s, check_precondition=not a.no_precondition)
    elif proc == "sparse":
        sub = embedders.sparse_subset(c, _graph(a.graph, "--graph"), Fraction(a.c), seed=a.seed, check_precondition=not a.no_precondition)
        _emit({"kind": "subset", "vertices": sub, "threshold": a.c}, a.out)
        return EXIT_OK
    else:  # pragma: no cover
        raise UsageError(f"unknown procedure {proc}")
    _emit(w.to_dict(), a.out)
    return EXIT_OK


def cmd_lll(a) -> int:
    family = [_graph(p) for p in (a.family or [])]
    spec = lll.BadEventFamily(a.m, a.k, Fraction(a.p_blue), family, seed=a.seed)
    try:
        res = lll.moser_tardos_coloring(spec, max_resamples=a.max_resamples)
    except lll.ResampleCapExceeded as exc:
        print(str(exc), file=sys.stderr)
        _emit({"coloring": None, "stats": {"resamples": exc.resamples, "per_class_counts": exc.counts}}, a.out)
        return EXIT_DOMAIN
    _emit({"coloring": res.coloring.to_dict(), "stats": res.stats()}, a.out)
    return EXIT_OK


def cmd_er_step(a) -> int:
    if a.coloring:
        c = hypergraph.TripleColoring.from_dict(_read_json(a.coloring))
    else:
        N = a.N if a.N is not None else 2 ** (a.t * (a.t - 1) // 2) + 1
        c = hypergraph.TripleColoring.random(N, 2, seed=a.seed)
    v, chi = hypergraph.erdos_rado_step(c, a.t)
    _emit({"v": v, "chi": chi.to_dict(), "holds": hypergraph.erdos_rado_holds(c, v, chi)}, a.out)
    return EXIT_OK


def cmd_mc(a) -> int:
    if a.study == "jumbled":
        rep = experiments.mc_jumbled(a.n, a.trials, seed=a.seed)
        _emit(rep.to_dict(), a.out)
    else:
        rows, c_hat = experiments.mc_discrepancy(range(a.h_min, a.h_max + 1))
        lines = ["h,n,discrepancy,ratio"]
        lines += [f"{r.h},{r.n},{r.discrepancy},{float(r.ratio):.6f}" for r in rows]
        lines.append(f"# C_hat={c_hat} ({float(c_hat):.6f})")
        _emit("\n".join(lines), a.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordramsey", description=f"Ordered Ramsey toolkit. {LOG_NOTE}")
    sub = p.add_subparsers(dest="cmd", metavar="command")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=f"{help_}. {LOG_NOTE}")
        sp.add_argument("--out", default="-", help="output file, '-' for stdout")
        sp.set_defaults(fn=fn)
        return sp

    g = add("gen", cmd_gen, "generate an ordered graph or triple system")
    g.add_argument("--family", required=True, choices=[
        "path", "path-power", "complete", "empty", "multipartite", "matching",
        "vdc", "vdc-perm", "jumbled", "jk", "tight-path", "t-hypergraph",
    ])
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--h", type=int, default=1)
    g.add_argument("--t", type=int, default=2)
    g.add_argument("--parts", type=int, nargs="+")
    g.add_argument("--graph")
    g.add_argument("--seed", type=int)

    s = add("stats", cmd_stats, "max degree, degeneracy, interval chromatic number, bandwidth, cover number")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--cap", type=int, default=24)

    c = add("contain", cmd_contain, "find an ordered copy of a pattern in a host graph")
    c.add_argument("--pattern", required=True)
    c.add_argument("--host", required=True)
    c.add_argument("--cap", type=int, default=16)

    def solver_args(sp):
        sp.add_argument("--target", action="append", required=True, help="pattern file for the next color")

    s = add("solve", cmd_solve, "decide an ordered Ramsey query or find the Ramsey number")
    solver_args(s)
    s.add_argument("--N", type=int)
    s.add_argument("--find-r", action="store_true")
    s.add_argument("--start", type=int, default=1)
    s.add_argument("--threads", type=int, default=None, help=f"worker processes (default ${solver.THREADS_ENV} or 1)")
    s.add_argument("--cap-edges", type=int, default=solver.DEFAULT_CAP_EDGES)
    s.add_argument("--emit-cert")
    s.add_argument("--cert-dir", default="certs")
    s.add_argument("--ledger", help="JSON-lines results cache")
    s.add_argument("--force", action="store_true", help="search even if the ledger has this query")

    o = add("oracle", cmd_oracle, "brute-force check of a small query")
    solver_args(o)
    o.add_argument("--N", type=int, required=True)

    s = add("sat", cmd_sat, "export DIMACS CNF, or turn a solver model into a certificate")
    solver_args(s)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--model", help="SAT solver output to convert")

    v = add("verify", cmd_verify, "re-check a certificate")
    v.add_argument("--cert", required=True)

    k = add("construct", cmd_construct, "build a lower-bound coloring")
    k.add_argument("--kind", required=True, choices=["es-path", "recursive", "random-blowup", "product", "assembly"])
    k.add_argument("--n", type=int, default=3)
    k.add_argument("--q", type=int, default=2)
    k.add_argument("--k", type=int, default=3)
    k.add_argument("--s", type=int, default=1)
    k.add_argument("--t", type=int, default=1)
    k.add_argument("--depth", type=int, default=1)
    k.add_argument("--block", type=int, default=1)
    k.add_argument("--matching")
    k.add_argument("--base")
    k.add_argument("--graph")
    k.add_argument("--seed", type=int)
    k.add_argument("--cap", type=int, default=constructions.DEFAULT_VERTEX_CAP)

    e = add("embed", cmd_embed, "run an embedding procedure on a coloring")
    e.add_argument("--procedure", required=True, choices=["path-clique", "multipartite", "bandwidth", "lemma", "sparse"])
    e.add_argument("--coloring", required=True, help="coloring file; lemma and sparse also take a red graph")
    e.add_argument("--m", type=int, default=2)
    e.add_argument("--n", type=int, default=2)
    e.add_argument("--k", type=int, default=1)
    e.add_argument("--chi", type=int, default=2)
    e.add_argument("--part", type=int, default=1)
    e.add_argument("--c", default="1/2", help="density threshold as a rational")
    e.add_argument("--s", type=int, default=1)
    e.add_argument("--matching")
    e.add_argument("--graph")
    e.add_argument("--seed", type=int)
    e.add_argument("--no-precondition", action="store_true")

    l_ = add("lll", cmd_lll, "resampling search for a coloring with no blue triangle, red family copy or red K_k")
    l_.add_argument("--m", type=int, required=True)
    l_.add_argument("--k", type=int, required=True)
    l_.add_argument("--p-blue", default="1/4")
    l_.add_argument("--family", nargs="*")
    l_.add_argument("--seed", type=int)
    l_.add_argument("--max-resamples", type=int, default=lll.DEFAULT_MAX_RESAMPLES)

    r = add("er-step", cmd_er_step, "extract the Erdos-Rado sequence from a triple coloring")
    r.add_argument("--t", type=int, required=True)
    r.add_argument("--coloring", help="triple coloring file; random if omitted")
    r.add_argument("--N", type=int)
    r.add_argument("--seed", type=int)

    m = add("mc", cmd_mc, "Monte Carlo and discrepancy studies")
    m.add_argument("--study", choices=["jumbled", "discrepancy"], default="jumbled")
    m.add_argument("--n", type=int, default=1024)
    m.add_argument("--trials", type=int, default=500)
    m.add_argument("--seed", type=int)
    m.add_argument("--h-min", type=int, default=1)
    m.add_argument("--h-max", type=int, default=7)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if not getattr(args, "fn", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, SizeLimitError, embedders.PreconditionError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
