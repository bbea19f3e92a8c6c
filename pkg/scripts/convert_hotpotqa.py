#!/usr/bin/env python3
"""Convert HotpotQA-style raw JSON into a corpus JSONL and an evaluation dataset JSONL.

Raw records: {"_id", "question", "answer", "supporting_facts": [[title, sent_idx], ...],
"context": [[title, [sentence, ...]], ...]}. Passages are deduplicated by title.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Tuple

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

import numpy as np

from hyperretrieve.utils.io import sha256_text, write_jsonl


def passage_id(title: str) -> str:
    return "hp-" + sha256_text(title)[:16]


def convert(records: List[Dict[str, Any]]) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
    passages: Dict[str, Dict[str, Any]] = {}
    dataset: List[Dict[str, Any]] = []
    for rec in records:
        for title, sentences in rec.get("context", []):
            text = "".join(sentences).strip()
            pid = passage_id(title)
            if text and pid not in passages:
                passages[pid] = {"id": pid, "title": title, "text": text}
        gold_titles = list(dict.fromkeys(title for title, _ in rec.get("supporting_facts", [])))
        dataset.append(
            {
                "id": str(rec.get("_id", len(dataset))),
                "question": rec["question"],
                "answers": [rec["answer"]],
                "gold_passage_ids": [passage_id(t) for t in gold_titles if passage_id(t) in passages],
            }
        )
    return sorted(passages.values(), key=lambda p: p["id"]), dataset


def main() -> None:
    ap = argparse.ArgumentParser(description="HotpotQA-style raw file -> corpus.jsonl + dataset.jsonl")
    ap.add_argument("raw", type=Path, help="Raw JSON file (a list of records)")
    ap.add_argument("--out-dir", type=Path, default=Path("data/hotpotqa"))
    ap.add_argument("--sample", type=int, default=None, help="Keep this many randomly chosen questions")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    records = json.loads(args.raw.read_text(encoding="utf-8"))
    if args.sample is not None and args.sample < len(records):
        keep = np.random.default_rng(args.seed).choice(len(records), size=args.sample, replace=False)
        records = [records[int(i)] for i in sorted(keep)]
    passages, dataset = convert(records)
    write_jsonl(args.out_dir / "corpus.jsonl", passages)
    write_jsonl(args.out_dir / "dataset.jsonl", dataset)
    print(f"Wrote: {args.out_dir / 'corpus.jsonl'} ({len(passages)} passages)")
    print(f"Wrote: {args.out_dir / 'dataset.jsonl'} ({len(dataset)} questions)")


if __name__ == "__main__":
    main()
