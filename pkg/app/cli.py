#!/usr/bin/env python3
"""Command-line entry point: index, retrieve, answer, eval, stats.

Exit codes: 0 success, 1 partial failure (report still written) or build failure,
2 missing prerequisite (corpus, index, endpoint, bad config).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
for p in (ROOT, SRC):
    if str(p) not in sys.path:
        sys.path.insert(0, str(p))

from corpus_layer import CorpusFormatError, DuplicatePassageError, ExtractionError
from embedding_layer import EmbeddingError
from hyperretrieve.clients import ClientError
from hyperretrieve.errors import ConfigError
from hyperretrieve.utils.io import JsonLinesError
from hypergraph import IndexIntegrityError, format_stats_cli
from output_layer.audit_trail import AuditTrail
from qa_eval import DatasetFormatError, generate_text_report

from app.config import AppConfig, load_environment, resolve_config
from app.pipeline import build_index, clear_index, run_answer, run_evaluation, run_retrieve, run_stats

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_PRECONDITION = 2

PRECONDITION_ERRORS = (
    ConfigError,
    FileNotFoundError,
    PermissionError,
    IndexIntegrityError,
    CorpusFormatError,
    DuplicatePassageError,
    DatasetFormatError,
    JsonLinesError,
)
RUNTIME_ERRORS = (ExtractionError, EmbeddingError, ClientError)

# argparse dest -> config key
FLAG_KEYS = {
    "corpus": "corpus",
    "index_dir": "index_dir",
    "eta": "eta",
    "beta": "beta",
    "t": "steps",
    "k1": "k1",
    "k2": "k2",
    "max_workers": "max_workers",
}
# store_true flag -> (config key, value when given)
SWITCH_KEYS = {
    "offline": ("offline", True),
    "no_weights": ("use_weight_matrix", False),
    "no_se": ("use_semantic_enhancement", False),
    "no_struct": ("use_structural_enhancement", False),
    "dense": ("use_hypergraph", False),
}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="JSON config file")
    common.add_argument("--corpus", type=Path, default=None, help="Corpus JSONL (id, title, text)")
    common.add_argument("--index-dir", type=Path, default=None, help="Index directory")
    common.add_argument("--offline", action="store_true", help="No network: offline extractor, encoder and chat")
    common.add_argument("--max-workers", type=int, default=None, help="Bound on concurrent requests / examples")
    common.add_argument("--audit-log", type=Path, default=None, help="Append the run log (JSON Lines) here")
    common.add_argument("--eta", type=float, default=None, help="Entity similarity threshold")
    common.add_argument("--beta", type=float, default=None, help="Dense score weight in the blend")
    common.add_argument("--t", type=int, default=None, help="Diffusion steps")
    common.add_argument("--k1", type=int, default=None, help="Seed passages")
    common.add_argument("--k2", type=int, default=None, help="Upper bound on selected passages")
    common.add_argument("--no-weights", action="store_true", help="Unweighted hyperedges")
    common.add_argument("--no-se", action="store_true", help="Skip the semantic blend")
    common.add_argument("--no-struct", action="store_true", help="Select the fixed top-k2 list")
    common.add_argument("--dense", action="store_true", help="Rank by dense passage similarity only")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    ap = argparse.ArgumentParser(prog="hyperretrieve", description="Entity-passage hypergraph retrieval.")
    sub = ap.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", parents=[common], help="Build the index from a corpus")
    p_index.add_argument("--rebuild", action="store_true", help="Delete the index directory (caches too) first")

    p_retrieve = sub.add_parser("retrieve", parents=[common], help="Rank passages for a query (JSON on stdout)")
    p_retrieve.add_argument("query")

    p_answer = sub.add_parser("answer", parents=[common], help="Retrieve and answer a question")
    p_answer.add_argument("query")
    p_answer.add_argument("--closed-book", action="store_true", help="Answer without retrieved passages")

    p_eval = sub.add_parser("eval", parents=[common], help="Evaluate on a QA dataset (JSONL)")
    p_eval.add_argument("dataset", type=Path)
    p_eval.add_argument("--out", type=Path, default=None, help="Report directory (default: <index-dir>/eval)")
    p_eval.add_argument("--qa", action="store_true", help="Also generate answers and score EM / F1")

    p_stats = sub.add_parser("stats", parents=[common], help="Graph scale of the index")
    p_stats.add_argument("--json", action="store_true", help="Print the stats as JSON")
    return ap


def config_from_args(args: argparse.Namespace, env: Optional[Dict[str, str]] = None) -> AppConfig:
    flags: Dict[str, Any] = {key: getattr(args, dest, None) for dest, key in FLAG_KEYS.items()}
    for dest, (key, value) in SWITCH_KEYS.items():
        if getattr(args, dest, False):
            flags[key] = value
    return resolve_config(flags=flags, env=env if env is not None else load_environment(), config_file=args.config)


def _print_json(obj: Any) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def cmd_index(config: AppConfig, args: argparse.Namespace, audit: AuditTrail) -> int:
    if args.rebuild:
        clear_index(config)
    manifest = build_index(config, audit)
    print(f"Indexed {manifest['n_passages']} passages, {manifest['n_entities']} entities into {config.index_dir}")
    return EXIT_OK


def cmd_retrieve(config: AppConfig, args: argparse.Namespace, audit: AuditTrail) -> int:
    _print_json(run_retrieve(config, args.query, audit))
    return EXIT_OK


def cmd_answer(config: AppConfig, args: argparse.Namespace, audit: AuditTrail) -> int:
    _print_json(run_answer(config, args.query, closed_book=args.closed_book, audit=audit))
    return EXIT_OK


def cmd_eval(config: AppConfig, args: argparse.Namespace, audit: AuditTrail) -> int:
    out_dir = args.out or Path(config.index_dir) / "eval"
    report, paths = run_evaluation(config, args.dataset, out_dir, with_qa=args.qa, audit=audit)
    sys.stdout.write(generate_text_report(report))
    print(f"Report written to {paths['json']}")
    return EXIT_PARTIAL if report.n_errors else EXIT_OK


def cmd_stats(config: AppConfig, args: argparse.Namespace, audit: AuditTrail) -> int:
    report = run_stats(config)
    if args.json:
        _print_json(report.to_dict())
    else:
        sys.stdout.write(format_stats_cli(report))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[AppConfig, argparse.Namespace, AuditTrail], int]] = {
    "index": cmd_index,
    "retrieve": cmd_retrieve,
    "answer": cmd_answer,
    "eval": cmd_eval,
    "stats": cmd_stats,
}


def main(argv: Optional[List[str]] = None, env: Optional[Dict[str, str]] = None) -> int:
    args = build_parser().parse_args(argv)
    audit = AuditTrail()
    try:
        config = config_from_args(args, env)
        audit.record("command_started", command=args.command, config=config.to_dict())
        code = COMMANDS[args.command](config, args, audit)
    except PRECONDITION_ERRORS as e:
        audit.record("command_failed", level="error", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_PRECONDITION
    except RUNTIME_ERRORS as e:
        audit.record("command_failed", level="error", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_PARTIAL
    for event in audit.warnings():
        if event["step"] != "command_failed":
            print(f"warning: {event['step']}: {_event_detail(event)}", file=sys.stderr)
    if args.audit_log is not None:
        audit.write(args.audit_log)
    return code


def _event_detail(event: Dict[str, Any]) -> str:
    skip = ("timestamp", "step", "level")
    return ", ".join(f"{k}={v}" for k, v in event.items() if k not in skip)


if __name__ == "__main__":
    sys.exit(main())
