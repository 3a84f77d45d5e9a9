"""Command-line entry point: ingest, analyze, report, serve.

All outputs are deterministic for a given (input, flags, seed) and land in
the configured output directory only.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import reports
from .game import SessionStore
from .graph import build_graph
from .lexicon import (
    Lexicon,
    NoDefinedWordsError,
    ParseError,
    parse_lexicon,
    run_pipeline,
    write_lexicon_jsonl,
)
from .minset import BudgetExceededError, enumerate_minsets, solve_minset
from .psychstats import (
    aggregate_by_structure,
    gradient_by_level,
    join_norms,
    load_norms,
    minset_vs_random,
    pos_breakdown,
    residual_effect_sizes,
)
from .server import make_server
from .stoplist import DEFAULT_STOPLIST, DEFAULT_STOPLIST_ID, load_stoplist
from .structure import KERNEL, hierarchy, label_structures

log = logging.getLogger(__name__)

SOFT_CHECK_MIN_ENTRIES = 20000
KERNEL_BAND = (0.05, 0.15)


def _existing_file(parser: argparse.ArgumentParser, value: str) -> Path:
    path = Path(value)
    if not path.is_file():
        parser.error(f"file not found: {value}")
    return path


def _positive(parser: argparse.ArgumentParser, value: str, flag: str) -> float:
    number = float(value)
    if number <= 0:
        parser.error(f"{flag} must be positive, got {value}")
    return number


def _add_input_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--in", dest="input", required=True, help="dictionary file")
    sub.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    sub.add_argument("--stoplist", help="stoplist file (default: built-in closed-class list)")
    sub.add_argument("--out", required=True, help="output directory")


def _add_analysis_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--aggregator", choices=("max", "min"), default="max")
    sub.add_argument("--truncate", type=int, default=100, metavar="N",
                     help="min words per gradient level before tail merging")
    sub.add_argument("--minset", choices=("exact", "auto", "off"), default="auto")
    sub.add_argument("--budget", default="60", metavar="SECONDS")
    sub.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexgraph",
        description="Dictionary-graph structure analysis and the dictionary game",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    ingest = subparsers.add_parser(
        "ingest", help="parse + normalize a dictionary into a closed lexicon")
    _add_input_flags(ingest)
    ingest.add_argument("--skip-unknown-pos", action="store_true",
                        help="drop records with unknown POS instead of failing")

    analyze = subparsers.add_parser(
        "analyze", help="graph, kernel, labels, hierarchies, optional minset")
    _add_input_flags(analyze)
    _add_analysis_flags(analyze)
    analyze.add_argument("--enumerate", type=int, default=0, metavar="K",
                         help="also enumerate up to K distinct optimum minsets")

    report = subparsers.add_parser(
        "report", help="join norm tables and write all statistics artifacts")
    _add_input_flags(report)
    _add_analysis_flags(report)
    report.add_argument("--freq", help="frequency norm CSV (word,value)")
    report.add_argument("--freq-kind", choices=("raw", "lg10wf"), default="raw")
    report.add_argument("--aoa", help="age-of-acquisition norm CSV")
    report.add_argument("--conc", help="concreteness norm CSV")
    report.add_argument("--samples", type=int, default=1000,
                        help="random subsets for the minset comparison")

    serve = subparsers.add_parser("serve", help="run the dictionary-game service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--data-dir", required=True, help="session event-log directory")
    serve.add_argument("--static-dir", help="web UI bundle directory")

    return parser


def _load_lexicon(parser: argparse.ArgumentParser, args) -> tuple[Lexicon, object]:
    input_path = _existing_file(parser, args.input)
    if args.stoplist:
        stoplist_path = _existing_file(parser, args.stoplist)
        stoplist = load_stoplist(stoplist_path)
        stoplist_id = stoplist_path.name
    else:
        stoplist = DEFAULT_STOPLIST
        stoplist_id = DEFAULT_STOPLIST_ID
    unknown_pos = "skip" if getattr(args, "skip_unknown_pos", False) else "reject"
    with open(input_path, "rb") as fh:
        lex = parse_lexicon(fh, format=args.format, unknown_pos=unknown_pos)
    lex, stats = run_pipeline(lex, stoplist, stoplist_id)
    return lex, stats


def _cmd_ingest(parser, args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    lex, stats = _load_lexicon(parser, args)
    with open(out_dir / "lexicon.jsonl", "w", encoding="utf-8") as fh:
        write_lexicon_jsonl(lex, fh)
    reports.write_run_meta(out_dir, {
        "command": "ingest",
        "stoplist_id": lex.stoplist_id,
        "normalizer_id": lex.normalizer_id,
        "reduction": stats.as_dict(),
    })
    print(f"ingest: {stats.entries_parsed} records -> "
          f"{stats.entries_after_drop_undefined} closed entries")
    return 0


def _analysis_core(parser, args):
    lex, stats = _load_lexicon(parser, args)
    budget = _positive(parser, args.budget, "--budget")
    graph = build_graph(lex)
    labels = label_structures(graph)
    k_hier = hierarchy(graph, "K", args.aggregator) if labels.kernel else None
    c_hier = hierarchy(graph, "C", args.aggregator)
    minset = None
    if args.minset != "off":
        minset = solve_minset(graph, budget=budget, mode=args.minset, seed=args.seed)

    total = len(graph)
    if total >= SOFT_CHECK_MIN_ENTRIES and total:
        fraction = len(labels.kernel) / total
        low, high = KERNEL_BAND
        verdict = "inside" if low <= fraction <= high else "outside"
        log.info(
            "soft check: kernel fraction %.4f is %s the %d-%d%% corroboration band",
            fraction, verdict, int(low * 100), int(high * 100),
        )
    return lex, stats, graph, labels, k_hier, c_hier, minset, budget


def _cmd_analyze(parser, args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    lex, stats, graph, labels, k_hier, c_hier, minset, budget = _analysis_core(parser, args)
    if k_hier is None:
        print("error: kernel is empty; no dictionary structure to analyze",
              file=sys.stderr)
        return 1
    reports.write_labels_csv(out_dir, labels, k_hier, c_hier)
    reports.write_graph_edges(out_dir, graph)
    reports.write_table1(out_dir, labels, minset)
    reports.write_table2(out_dir, k_hier, c_hier, labels)
    if minset is not None:
        reports.write_minset_json(out_dir, minset, labels)
        if args.enumerate > 0:
            results = enumerate_minsets(
                graph, max_count=args.enumerate, budget=budget, seed=args.seed)
            payload = [sorted(r.members) for r in results]
            (out_dir / "minsets_enumerated.json").write_text(
                json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    reports.write_run_meta(out_dir, {
        "command": "analyze",
        "aggregator": args.aggregator,
        "minset_mode": args.minset,
        "seed": args.seed,
        "stoplist_id": lex.stoplist_id,
        "normalizer_id": lex.normalizer_id,
        "reduction": stats.as_dict(),
        "core_c_level": c_hier.core_level,
    })
    print(f"analyze: {len(graph)} words, kernel {len(labels.kernel)}, "
          f"core {len(labels.core)}, satellites {len(labels.satellites)}"
          + (f", minset {len(minset.members)} ({minset.status})" if minset else ""))
    return 0


def _cmd_report(parser, args) -> int:
    if not (args.freq or args.aoa or args.conc):
        parser.error("report needs at least one norm table (--freq/--aoa/--conc)")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    lex, stats, graph, labels, k_hier, c_hier, minset, budget = _analysis_core(parser, args)

    freq_table = aoa_table = conc_table = None
    if args.freq:
        path = _existing_file(parser, args.freq)
        kind = "frequency_raw" if args.freq_kind == "raw" else "frequency_lg10wf"
        with open(path, "r", encoding="utf-8") as fh:
            freq_table = load_norms(fh, kind, provenance=path.name)
    if args.aoa:
        path = _existing_file(parser, args.aoa)
        with open(path, "r", encoding="utf-8") as fh:
            aoa_table = load_norms(fh, "aoa", provenance=path.name)
    if args.conc:
        path = _existing_file(parser, args.conc)
        with open(path, "r", encoding="utf-8") as fh:
            conc_table = load_norms(fh, "concreteness", provenance=path.name)

    records = join_norms(labels, freq_table, aoa_table, conc_table)
    structure_report = aggregate_by_structure(records, labels, minset)
    reports.write_structure_report(out_dir, structure_report)
    residuals = residual_effect_sizes(records, labels) if freq_table else None
    reports.write_effect_sizes(out_dir, structure_report, residuals)
    reports.write_correlations(out_dir, structure_report)
    if k_hier is not None:
        reports.write_gradients(
            out_dir, "K",
            gradient_by_level(k_hier, records, None, args.truncate))
    reports.write_gradients(
        out_dir, "C",
        gradient_by_level(c_hier, records, KERNEL, args.truncate))
    reports.write_pos_breakdown(out_dir, pos_breakdown(labels, lex))
    if minset is not None:
        comparison = minset_vs_random(
            minset, labels, records, samples=args.samples, seed=args.seed)
        reports.write_minset_comparison(out_dir, comparison)
    reports.write_run_meta(out_dir, {
        "command": "report",
        "aggregator": args.aggregator,
        "minset_mode": args.minset,
        "seed": args.seed,
        "samples": args.samples,
        "truncate": args.truncate,
        "norms": {
            "frequency": freq_table.provenance if freq_table else None,
            "aoa": aoa_table.provenance if aoa_table else None,
            "concreteness": conc_table.provenance if conc_table else None,
        },
        "effect_size_estimator": "cohens_d_pooled_sd",
        "stoplist_id": lex.stoplist_id,
    })
    print(f"report: {len(records)} words joined; artifacts in {out_dir}")
    return 0


def _cmd_serve(parser, args) -> int:
    store = SessionStore(data_dir=args.data_dir)
    server = make_server(store, host=args.host, port=args.port,
                         static_dir=args.static_dir)
    host, port = server.server_address[:2]
    print(f"game service listening on http://{host}:{port} "
          f"(data: {args.data_dir})", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        print("shutting down")
    finally:
        server.server_close()
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "ingest":
            return _cmd_ingest(parser, args)
        if args.command == "analyze":
            return _cmd_analyze(parser, args)
        if args.command == "report":
            return _cmd_report(parser, args)
        if args.command == "serve":
            return _cmd_serve(parser, args)
    except (ParseError, NoDefinedWordsError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
