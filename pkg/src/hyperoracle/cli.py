"""Command-line entry point: ``hyperoracle <subcommand> ...``.

Hyperedge ids are 0-based line indices of the input file; vertices are
addressed by their original tokens.  Exit status is 2 for usage errors
and 1 for runtime failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time

from .connectivity import find_connected_components, s_adjacency
from .evaluation import (
    KINDS,
    Query,
    QueryBatch,
    avep_at_k,
    centrality_report,
    evaluate,
    read_pairs,
    sample_queries,
    write_batch,
)
from .hypercore import HypergraphParseError, load_hypergraph, load_labels
from .landmarks import AssignmentConfig
from .landmarks.config import SELECTIONS, STRATEGIES
from .linegraph import ExactOracle, LineGraphTooLarge, build_augmented_line_graph, build_line_graph, s_line_graph
from .oracle import (
    OracleFormatError,
    UnsupportedSizeError,
    build_oracle,
    estimate_h2h,
    estimate_v2e,
    estimate_v2v,
    load_oracle,
    profile_h2h,
    profile_v2v,
    save_oracle,
    top_k_neighbors,
)

log = logging.getLogger("hyperoracle")


class UsageError(Exception):
    pass


def _fmt(x, digits=None) -> str:
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        if digits is not None:
            return str(round(x, digits)) if digits > 0 else str(int(round(x)))
        return f"{x:.6g}"
    return str(x)


def _require_file(path, flag):
    if path is None:
        raise UsageError(f"{flag} is required")
    if not os.path.isfile(path):
        raise UsageError(f"{flag}: no such file {path!r}")
    return path


def _open_out(path):
    return open(path, "w", encoding="utf-8", newline="\n") if path else sys.stdout


def _close_out(fh):
    if fh is not sys.stdout:
        fh.close()


def _load_h(args, required=True):
    if args.input is None and not required:
        return None
    return load_hypergraph(_require_file(args.input, "--input"), dedupe=getattr(args, "dedupe", False))


def _load_o(args, h=None):
    o = load_oracle(_require_file(args.oracle, "--oracle"))
    if h is not None and h.n_edges != o.n_edges:
        raise UsageError(f"oracle indexes {o.n_edges} hyperedges but --input has {h.n_edges}")
    return o


def _edge_id(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise UsageError(f"hyperedge ids are integer line indices, got {tok!r}") from None


def _resolve(h, kind: str, src: str, dst: str) -> tuple[int, int]:
    try:
        if kind == "hh":
            return _edge_id(src), _edge_id(dst)
        if kind == "ve":
            return h.vertex_id(src), _edge_id(dst)
        return h.vertex_id(src), h.vertex_id(dst)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _config_from(args) -> AssignmentConfig:
    try:
        return AssignmentConfig(
            budget_q=args.budget_q,
            budget_l=args.budget_l,
            d_min=args.dmin,
            alpha=args.alpha,
            beta=args.beta,
            strategy=args.assign,
            selection=args.select,
            seed=args.seed,
            pair_sample_fraction=args.pair_fraction,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# subcommands


def cmd_components(args) -> int:
    h = _load_h(args)
    cc, _ = find_connected_components(h, args.smax)
    out = _open_out(args.out)
    try:
        for s in range(1, args.smax + 1):
            lvl = cc.level(s)
            for cid, members in enumerate(lvl.members):
                ids = ",".join(map(str, members))
                out.write(f"{s}\t{cid}\t{lvl.sizes[cid]}\t{lvl.n_vertices[cid]}\t{ids}\n")
    finally:
        _close_out(out)
    return 0


def cmd_linegraph(args) -> int:
    h = _load_h(args)
    out = _open_out(args.out)
    try:
        if args.augmented:
            ag = build_augmented_line_graph(h, args.max_edges)
            for e, f, w in s_line_graph(ag.line_graph, args.s).edge_list():
                out.write(f"{e}\t{f}\t{w}\thyperedge\n")
            for v, e in ag.membership:
                out.write(f"{h.vertex_tokens[v]}\t{e}\t1\tmembership\n")
        else:
            lg = s_line_graph(build_line_graph(h, args.max_edges), args.s)
            for e, f, w in lg.edge_list():
                out.write(f"{e}\t{f}\t{w}\n")
    finally:
        _close_out(out)
    return 0


def cmd_build(args) -> int:
    cfg = _config_from(args)
    h = _load_h(args)
    log.info("input: %d vertices, %d hyperedges", h.n_vertices, h.n_edges)
    o = build_oracle(h, cfg, args.smax)
    save_oracle(o, args.out)
    r = o.report
    log.info("OFF %.3f s (components %.3f s, assignment %.3f s, labels %.3f s)",
             r["off_seconds"], r["components_seconds"], r["assignment_seconds"], r["population_seconds"])
    log.info("budget %d, landmarks %d, stored label entries %d", r["budget"], r["n_landmarks"], o.stored_triples())
    if r.get("warning"):
        log.warning("%s", r["warning"])
    return 0


def cmd_query(args) -> int:
    h = _load_h(args, required=args.type != "hh")
    o = _load_o(args, h)
    pairs = read_pairs(_require_file(args.pairs, "--pairs"))
    out = _open_out(args.out)
    t_query = 0.0
    try:
        out.write("src\tdst\ts\tlb\tub\testimate\tstatus\n")
        for src, dst, s_row in pairs:
            s = args.s if args.s is not None else s_row
            if s is None:
                raise UsageError("--s is required unless the pairs file has an s column")
            a, b = _resolve(h, args.type, src, dst)
            t0 = time.perf_counter()
            if args.type == "hh":
                d = estimate_h2h(o, a, b, s)
            elif args.type == "vv":
                d = estimate_v2v(o, h, a, b, s)
            else:
                d = estimate_v2e(o, h, a, b, s)
            t_query += time.perf_counter() - t0
            out.write(f"{src}\t{dst}\t{s}\t{_fmt(d.lb)}\t{_fmt(d.ub)}\t"
                      f"{_fmt(d.estimate, args.round)}\t{d.status}\n")
    finally:
        _close_out(out)
    if pairs:
        log.info("%d queries, %.2f us per query", len(pairs), t_query / len(pairs) * 1e6)
    return 0


def cmd_profile(args) -> int:
    h = _load_h(args, required=args.type == "vv")
    o = _load_o(args, h)
    pairs = read_pairs(_require_file(args.pairs, "--pairs"))
    out = _open_out(args.out)
    try:
        out.write("src\tdst\ts\tlb\tub\testimate\tstatus\n")
        for src, dst, _ in pairs:
            a, b = _resolve(h, args.type, src, dst)
            prof = profile_h2h(o, a, b) if args.type == "hh" else profile_v2v(o, h, a, b)
            for d in prof.estimates:
                out.write(f"{src}\t{dst}\t{d.s}\t{_fmt(d.lb)}\t{_fmt(d.ub)}\t"
                          f"{_fmt(d.estimate, args.round)}\t{d.status}\n")
    finally:
        _close_out(out)
    return 0


def cmd_topk(args) -> int:
    h = _load_h(args, required=args.kind == "vertex" or args.exact or args.avep)
    o = _load_o(args, h)
    raw = load_labels(_require_file(args.labels, "--labels"))
    if args.kind == "vertex":
        labels = {}
        for tok, lab in raw.items():
            try:
                labels[h.vertex_id(tok)] = lab
            except KeyError as exc:
                raise UsageError(str(exc)) from None
        name = lambda x: h.vertex_tokens[x]  # noqa: E731
    else:
        labels = {_edge_id(tok): lab for tok, lab in raw.items()}
        name = str
    queries = sorted(labels)
    if args.queries:
        wanted = [line.strip() for line in open(_require_file(args.queries, "--queries"), encoding="utf-8")]
        queries = [_resolve(h, "vv" if args.kind == "vertex" else "hh", t, t)[0] for t in wanted if t]
    exact = ExactOracle(h) if (args.exact or args.avep) else None
    scores = []
    out = _open_out(args.out)
    try:
        out.write("query\trank\tneighbor\tdistance\n")
        for q in queries:
            ranked = top_k_neighbors(o, h, q, args.kind, args.s, args.k, labels,
                                     exact=exact if args.exact else None)
            for rank, (x, d) in enumerate(ranked, start=1):
                out.write(f"{name(q)}\t{rank}\t{name(x)}\t{_fmt(d, args.round)}\n")
            if args.avep:
                truth = top_k_neighbors(None, h, q, args.kind, args.s, len(labels), labels, exact=exact)
                scores.append(avep_at_k([x for x, _ in ranked], truth, args.k))
    finally:
        _close_out(out)
    if args.avep and scores:
        log.info("AveP@%d = %.4f over %d queries", args.k, sum(scores) / len(scores), len(scores))
    return 0


def _batch_from_args(args, h, o_smax):
    if args.queries:
        rows = read_pairs(_require_file(args.queries, "--queries"))
        qs = []
        for src, dst, s in rows:
            if s is None:
                raise UsageError("--queries file needs an s column")
            a, b = _resolve(h, args.type, src, dst)
            qs.append(Query(a, b, args.type, s))
        return QueryBatch(qs, {"sampler": "file", "path": args.queries})
    cc, _ = find_connected_components(h, o_smax)
    return sample_queries(h, cc, args.per_s, args.cross_frac, args.seed, args.type)


def cmd_sample_queries(args) -> int:
    h = _load_h(args)
    cc, _ = find_connected_components(h, args.smax)
    batch = sample_queries(h, cc, args.per_s, args.cross_frac, args.seed, args.type)
    if args.out:
        write_batch(batch, h, args.out)
    else:
        for q in batch:
            src = h.vertex_tokens[q.source] if q.kind != "hh" else q.source
            dst = h.vertex_tokens[q.target] if q.kind == "vv" else q.target
            sys.stdout.write(f"{src}\t{dst}\t{q.s}\n")
    log.info("sampled %d queries; provenance %s", len(batch), json.dumps(batch.provenance, sort_keys=True))
    return 0


def cmd_eval(args) -> int:
    h = _load_h(args)
    o = _load_o(args, h)
    batch = _batch_from_args(args, h, o.s_max)
    report = evaluate(o, h, batch, ExactOracle(h))
    payload = report.to_json()
    payload["provenance"] = batch.provenance
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.rows:
        with open(args.rows, "w", encoding="utf-8", newline="\n") as fh:
            for src, dst, s, true, lb, ub, est, status in report.rows:
                fh.write(f"{src}\t{dst}\t{s}\t{_fmt(true)}\t{_fmt(lb)}\t{_fmt(ub)}\t{_fmt(est)}\t{status}\n")
    return 0


def cmd_centrality(args) -> int:
    h = _load_h(args)
    o = _load_o(args, h)
    s_values = args.s or list(range(1, o.s_max + 1))
    for s in s_values:
        if not 1 <= s <= o.s_max:
            raise UsageError(f"--s {s} outside [1, {o.s_max}]")
    cc, ledger = find_connected_components(h, o.s_max)
    cache = {}

    def adjacency(s):
        if s not in cache:
            cache[s] = s_adjacency(h, ledger, s)
        return cache[s]

    rep = centrality_report(h, o, cc, adjacency, s_values, args.max_entities, args.seed)
    out = _open_out(args.out)
    try:
        out.write("kind\tid\ts\texact\testimate\n")
        for r in rep.rows:
            ident = h.vertex_tokens[r.id] if r.kind == "vertex" else r.id
            out.write(f"{r.kind}\t{ident}\t{r.s}\t{_fmt(r.exact)}\t{_fmt(r.estimate)}\n")
        for kind, st in (("hyperedge", rep.hyperedge), ("vertex", rep.vertex)):
            out.write(f"# {kind}\tmape={_fmt(st.mape)}\tlar={_fmt(st.lar)}\t"
                      f"excluded_mape={st.excluded_mape}\texcluded_lar={st.excluded_lar}\n")
    finally:
        _close_out(out)
    return 0


# parser


def _add_common(p, oracle=False, input_required=True):
    p.add_argument("--input", help="hypergraph file, one hyperedge per line")
    if oracle:
        p.add_argument("--oracle", required=True, help="oracle file written by 'build'")
    p.add_argument("--dedupe", action="store_true", help="drop repeated hyperedges on load")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker bound; execution is currently sequential")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperoracle", description="Landmark oracle for hypergraph s-distances.")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("components", help="s-connected components as TSV")
    _add_common(p)
    p.add_argument("--smax", type=int, default=10)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("linegraph", help="export the (s-)line graph edge list")
    _add_common(p)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--augmented", action="store_true", help="add vertex nodes and membership edges")
    p.add_argument("--max-edges", type=int, default=10**8)
    p.set_defaults(func=cmd_linegraph)

    p = sub.add_parser("build", help="build and save an oracle")
    _add_common(p)
    p.add_argument("--smax", type=int, default=10)
    p.add_argument("--dmin", type=int, default=4)
    budget = p.add_mutually_exclusive_group()
    budget.add_argument("--budget-l", type=float, help="pairs per hyperedge (Q = l * |E|)")
    budget.add_argument("--budget-q", type=int, help="total stored distance pairs")
    p.add_argument("--alpha", type=float, default=0.2)
    p.add_argument("--beta", type=float, default=0.6)
    p.add_argument("--assign", choices=STRATEGIES, default="sampling")
    p.add_argument("--select", choices=SELECTIONS, default="degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pair-fraction", type=float, default=0.40)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="estimate s-distances for a pairs file")
    _add_common(p, oracle=True)
    p.add_argument("--type", choices=KINDS, default="hh")
    p.add_argument("--s", type=int)
    p.add_argument("--pairs", required=True)
    p.add_argument("--round", type=int, help="display rounding digits (0 = integer)")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("profile", help="refined distance profiles for a pairs file")
    _add_common(p, oracle=True)
    p.add_argument("--type", choices=("hh", "vv"), default="hh")
    p.add_argument("--pairs", required=True)
    p.add_argument("--round", type=int)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("topk", help="label-filtered nearest neighbours")
    _add_common(p, oracle=True)
    p.add_argument("--labels", required=True, help="TSV: id TAB label")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--kind", choices=("hyperedge", "vertex"), default="hyperedge")
    p.add_argument("--queries", help="file with one query id per line (default: every labelled id)")
    p.add_argument("--exact", action="store_true", help="rank by exact BFS distances")
    p.add_argument("--avep", action="store_true", help="log mean AveP@k against exact rankings")
    p.add_argument("--round", type=int)
    p.set_defaults(func=cmd_topk)

    p = sub.add_parser("sample-queries", help="stratified query sample")
    _add_common(p)
    p.add_argument("--smax", type=int, default=10)
    p.add_argument("--per-s", type=int, default=100)
    p.add_argument("--cross-frac", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--type", choices=KINDS, default="hh")
    p.set_defaults(func=cmd_sample_queries)

    p = sub.add_parser("eval", help="accuracy and latency report as JSON")
    _add_common(p, oracle=True)
    p.add_argument("--queries", help="TSV src TAB dst TAB s (default: stratified sample)")
    p.add_argument("--per-s", type=int, default=100)
    p.add_argument("--cross-frac", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--type", choices=KINDS, default="hh")
    p.add_argument("--rows", help="write per-query TSV rows here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("centrality", help="exact vs estimated s-closeness")
    _add_common(p, oracle=True)
    p.add_argument("--s", type=int, action="append", help="level to score (repeatable; default all)")
    p.add_argument("--max-entities", type=int, help="sample this many entities per kind and level")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_centrality)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr, force=True)
    echo = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    log.info("config: %s", json.dumps(echo, sort_keys=True))
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    for flag in ("smax", "k", "per_s"):
        val = getattr(args, flag, None)
        if val is not None and val < (0 if flag == "per_s" else 1):
            parser.error(f"--{flag.replace('_', '-')} out of range")
    if getattr(args, "dmin", 4) > 5 or getattr(args, "dmin", 4) < 2:
        parser.error("--dmin must lie in [2, 5]: small-component distances are tabulated up to size 5")
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (HypergraphParseError, OracleFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, LineGraphTooLarge, UnsupportedSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    log.info("%s finished in %.3f s", args.command, time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
