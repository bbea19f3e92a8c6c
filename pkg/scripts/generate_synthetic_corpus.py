#!/usr/bin/env python3
"""Write a synthetic corpus plus a pinned extraction cache (for index builds without an LLM)."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
for p in (ROOT, SRC):
    if str(p) not in sys.path:
        sys.path.insert(0, str(p))

from corpus_layer import ExtractionCache
from hyperretrieve.synthetic import generate_corpus, generate_queries
from hyperretrieve.utils.io import write_jsonl

from app.pipeline import EXTRACTION_CACHE_FILE


def main() -> None:
    ap = argparse.ArgumentParser(description="Generate a synthetic corpus with a requested hypergraph scale.")
    ap.add_argument("--passages", type=int, default=10_000, help="Number of passages (hyperedges)")
    ap.add_argument("--entities", type=int, default=50_000, help="Number of distinct entities (nodes)")
    ap.add_argument("--mean", type=float, default=8.0, help="Mean entities per passage")
    ap.add_argument("--queries", type=int, default=0, help="Also write this many queries to queries.txt")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-dir", type=Path, default=Path("data/synthetic"), help="Where corpus.jsonl goes")
    ap.add_argument("--index-dir", type=Path, default=None, help="Index directory to pin the extraction cache in")
    args = ap.parse_args()

    corpus = generate_corpus(args.passages, args.entities, args.mean, seed=args.seed)
    corpus_path = args.out_dir / "corpus.jsonl"
    write_jsonl(corpus_path, [p.to_dict() for p in corpus.passages])

    index_dir = args.index_dir or args.out_dir / "index"
    cache = ExtractionCache(index_dir / EXTRACTION_CACHE_FILE)
    for passage, entity_set in zip(corpus.passages, corpus.entity_sets):
        cache.put(entity_set, passage.text)
    cache.save()

    print(f"Wrote: {corpus_path} ({len(corpus.passages)} passages, {corpus.n_entities} entities, nnz {corpus.nnz})")
    print(f"Pinned extraction cache: {index_dir / EXTRACTION_CACHE_FILE}")
    if args.queries:
        queries_path = args.out_dir / "queries.txt"
        queries_path.write_text("\n".join(generate_queries(corpus, args.queries, seed=args.seed)) + "\n", encoding="utf-8")
        print(f"Wrote: {queries_path}")


if __name__ == "__main__":
    main()
