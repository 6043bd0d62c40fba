"""Command-line front end.

JSON reports go to stdout, diagnostics to stderr. Exit codes: 0 success,
2 bad parameters or input, 3 budget/capability limits.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import anonymity as an
from .anonymize import alg1_anonymize, alg4_boost, cluster_rows, generalize
from .attack import Example6, attack_report, gen_example6
from .confusion import (CANONICAL, check_nt_confusion, confusion_report, example3_demo,
                        generalize_qi, is_table_k_anonymous, method_aware_reid, qi_clustering,
                        read_table_csv, swap_within_clusters, write_table_csv)
from .errors import BudgetError, CapabilityError, GraphAnonError, ParameterError
from .graph import generate, load_edge_list, read_header_comments, save_edge_list
from .similarity import SimilarityKind, similarity_matrix

SCHEMA_VERSION = 1


def _emit(report: dict) -> None:
    report = {"schema_version": SCHEMA_VERSION, **report}
    json.dump(report, sys.stdout, sort_keys=False)
    sys.stdout.write("\n")


def _need(value, flag):
    if value is None:
        raise ParameterError(f"{flag} is required here")
    return value


def cmd_gen(args):
    if args.kind == "example6":
        ex = gen_example6(_need(args.k, "--k"), _need(args.l, "--l"), _need(args.m, "--m"))
        g, comments = ex.graph, [ex.header()]
    else:
        params = {"n": args.n, "a": args.a, "b": args.b, "p": args.p, "seed": args.seed}
        g = generate(args.kind, **{k: v for k, v in params.items() if v is not None})
        comments = []
    save_edge_list(g, args.output, comments)
    return {"kind": args.kind, "n": g.n, "edges": g.num_edges, "output": args.output}


def cmd_check(args):
    g = load_edge_list(args.file)
    start = time.perf_counter()
    d = args.definition
    if d == "neighbor":
        rep = an.is_k_anonymous(g, args.k)
    elif d == "degree":
        rep = an.is_k_degree_anonymous(g, args.k)
    elif d == "neigh1":
        rep = an.is_k_neighborhood_anonymous(g, args.k)
    elif d == "feder":
        rep = an.is_feder_kl(g, args.k, _need(args.l, "--l"))
    elif d == "candidate":
        rep = an.k_candidate_check(g, args.query, args.k)
    elif d == "kl1":
        rep = an.is_kl_anonymous_def1(g, args.k, _need(args.l, "--l"))
    else:
        rep = an.is_kl_anonymous_def2(g, args.k, _need(args.l, "--l"))
    out = rep.to_dict()
    out["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return out


def cmd_measure(args):
    g = load_edge_list(args.file)
    start = time.perf_counter()
    cap = args.cap if args.cap is not None else g.n
    if args.alg == "2":
        l, definition = an.largest_l_alg2(g, args.k), an.Definition.KL_DEF1
    elif args.alg == "3":
        l, definition = an.largest_l_alg3(g, args.k), an.Definition.KL_DEF2
    elif args.alg == "exact1":
        l, definition = an.largest_l_exact_def1(g, args.k, cap, args.budget), an.Definition.KL_DEF1
    else:
        l, definition = an.largest_l_exact_def2(g, args.k, cap, args.budget), an.Definition.KL_DEF2
    elapsed = round((time.perf_counter() - start) * 1000, 3)
    if args.matrix_csv:
        kind = SimilarityKind.MANHATTAN if definition is an.Definition.KL_DEF1 else SimilarityKind.TWO_PATH
        with open(args.matrix_csv, "w", encoding="utf-8") as fh:
            fh.write(similarity_matrix(g, kind).to_csv())
    return {"definition": definition.value, "alg": args.alg, "k": args.k, "l": l,
            "satisfied": True, "witness": None, "elapsed_ms": elapsed}


def _write_sidecar(path, report):
    with open(path + ".json", "w", encoding="utf-8") as fh:
        json.dump({"schema_version": SCHEMA_VERSION, **report}, fh, indent=2)
        fh.write("\n")


def cmd_anonymize(args):
    g = load_edge_list(args.file)
    kind = SimilarityKind.parse(args.sim)
    clustering = cluster_rows(g, args.k, kind)
    out = alg1_anonymize(g, args.k, kind, clustering)
    before, after = set(g.edges), set(out.edges)
    save_edge_list(out, args.output)
    report = {"k": args.k, "similarity": kind.value, "clusters": clustering.as_lists(),
              "edges_added": len(after - before), "edges_deleted": len(before - after),
              "vertices_deleted": 0, "achieved_l": None,
              "generalized": generalize(g, clustering).to_dict(), "output": args.output}
    _write_sidecar(args.output, report)
    return report


def cmd_boost(args):
    g = load_edge_list(args.file)
    kind = SimilarityKind.parse(args.sim)
    res = alg4_boost(g, args.k, kind)
    kept = res.kept
    alive = set(kept)
    before = {(u, v) for u, v in g.edges if u in alive and v in alive}
    after = {(kept[u], kept[v]) for u, v in res.graph.edges}
    save_edge_list(res.graph, args.output)
    report = {"k": args.k, "similarity": kind.value, "clusters": None,
              "edges_added": len(after - before),
              "edges_deleted": g.num_edges - len(after),
              "vertices_deleted": res.deleted, "kept": kept, "l": res.l,
              "achieved_l": res.l_prime, "empty": res.is_empty, "output": args.output}
    _write_sidecar(args.output, report)
    return report


def cmd_attack(args):
    g = load_edge_list(args.file)
    known = None
    if args.targets == "border":
        meta = Example6.parse_header(read_header_comments(args.file))
        if meta is None:
            raise ParameterError("--targets border needs a file written by 'gen example6'")
        ex = gen_example6(*meta)
        if ex.graph != g:
            raise ParameterError("graph does not match its example6 header")
        targets, known = ex.border, ex.known_neighbors()
    else:
        targets = list(range(g.n))
    return attack_report(g, targets, args.aux, known).to_dict()


def cmd_confuse(args):
    if args.action == "example3":
        return example3_demo(args.seed, args.variant, args.epsilon_ratio).to_dict()
    if args.file is None:
        raise ParameterError("a table CSV is required")
    qi = [c for c in _need(args.qi, "--qi").split(",") if c]
    table = read_table_csv(args.file, qi)
    if args.action == "kanon":
        rep = is_table_k_anonymous(table, args.k)
        return {"k": args.k, "satisfied": rep.satisfied, "witness": rep.witness}
    t = args.t if args.t is not None else 1.0 / args.k
    protected, clustering = generalize_qi(table, args.k)
    if args.action == "swap":
        swapped = swap_within_clusters(table, qi_clustering(table, args.k), args.seed)
        write_table_csv(swapped, _need(args.output, "-o"))
        return {"k": args.k, "seed": args.seed, "clusters": clustering.as_lists(),
                "output": args.output}
    aware = method_aware_reid(lambda a: generalize_qi(a, args.k)[0])
    if args.action == "conf":
        res = confusion_report(aware, protected, [table], t)
        return {"k": args.k, "t": t, "method": aware.name, "confusion": res.value,
                "zero_branch_records": res.zero_branch}
    rep = check_nt_confusion([aware, CANONICAL], protected, [table], args.k, t)
    return {"k": args.k, **rep.to_dict()}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphanon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("gen", help="write a generated graph")
    s.add_argument("kind", choices=["complete", "cycle", "bipartite", "gnp", "example6"])
    for flag in ("--n", "--a", "--b", "--k", "--l", "--m"):
        s.add_argument(flag, type=int)
    s.add_argument("--p", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", help="test one anonymity definition")
    s.add_argument("--def", dest="definition", required=True,
                   choices=["neighbor", "degree", "neigh1", "feder", "candidate", "kl1", "kl2"])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int)
    s.add_argument("--query", choices=list(an.QUERIES), default="neighbor_vector")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("measure", help="largest l for a given k")
    s.add_argument("--alg", required=True, choices=["2", "3", "exact1", "exact2"])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--cap", type=int)
    s.add_argument("--budget", type=int, default=an.SUBSET_BUDGET,
                   help="max subsets enumerated by the exact measures")
    s.add_argument("--matrix-csv", help="also write the similarity matrix used")
    s.add_argument("file")
    s.set_defaults(func=cmd_measure)

    for verb, func, text in (("anonymize", cmd_anonymize, "k-anonymize by clustering"),
                             ("boost", cmd_boost, "raise l by deleting vertices")):
        s = sub.add_parser(verb, help=text)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--sim", choices=["l1", "2path"], default="l1")
        s.add_argument("-o", "--output", required=True)
        s.add_argument("file")
        s.set_defaults(func=func)

    s = sub.add_parser("attack", help="re-identify vertices from two known neighbors")
    s.add_argument("--aux", choices=["neighbors", "neighbors+degree"], default="neighbors+degree")
    s.add_argument("--targets", choices=["border", "all"], default="all")
    s.add_argument("file")
    s.set_defaults(func=cmd_attack)

    s = sub.add_parser("confuse", help="table k-anonymity and confusion")
    actions = s.add_subparsers(dest="action", required=True)
    for action in ("kanon", "conf", "ntconf", "swap", "example3"):
        a = actions.add_parser(action)
        a.add_argument("--qi")
        a.add_argument("--k", type=int, default=3)
        a.add_argument("--t", type=float)
        a.add_argument("--seed", type=int, default=0)
        a.add_argument("--variant", choices=["average", "perturbed"], default="average")
        a.add_argument("--epsilon-ratio", type=float, default=0.5)
        a.add_argument("-o", "--output")
        a.add_argument("file", nargs="?")
        a.set_defaults(func=cmd_confuse)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except (BudgetError, CapabilityError) as exc:
        print(f"graphanon: {exc}", file=sys.stderr)
        return 3
    except (GraphAnonError, OSError) as exc:
        print(f"graphanon: {exc}", file=sys.stderr)
        return 2
    _emit(report)
    return 0


if __name__ == "__main__":
    sys.exit(main())
