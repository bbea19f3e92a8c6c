"""
Evaluation runner: retrieve (and optionally answer) for every example, then score.

Only the diffusion and enhancement core is timed; query extraction and embedding
happen before the clock starts.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, Dict, List, Optional

from hyperretrieve.clients import ChatClient, ClientError
from hyperretrieve.entities import Passage, QAExample
from retrieval_engine import HypergraphRetriever, RetrievalConfig

from qa_eval.answering import QA_INSTRUCTION, answer
from qa_eval.metrics import exact_match, hit_at_k, recall_at_k, token_f1
from qa_eval.types import RECALL_KS, EvalRecord, EvalReport

if TYPE_CHECKING:
    from output_layer.audit_trail import AuditTrail


def evaluate_example(
    example: QAExample,
    retriever: HypergraphRetriever,
    config: RetrievalConfig,
    passages: Dict[str, Passage],
    llm: Optional[ChatClient] = None,
    instruction: str = QA_INSTRUCTION,
) -> EvalRecord:
    record = EvalRecord(example_id=example.example_id, question=example.question)
    missing = sorted(set(example.gold_passage_ids) - passages.keys())
    if missing:
        record.error = f"unknown gold passage ids: {', '.join(missing)}"
        return record
    # Without gold passages only the answer can be scored.
    has_gold = bool(example.gold_passage_ids)
    if not has_gold and llm is None:
        record.error = "no gold passage ids"
        return record

    artifacts = retriever.query_artifacts(example.question, config)
    start = time.perf_counter()
    result = retriever.rank(example.question, artifacts, config)
    record.retrieval_seconds = time.perf_counter() - start

    ids = retriever.index.passage_ids
    record.selected_ids = result.selected_ids(ids)
    record.ranked_ids = result.ranked_ids(ids)
    record.n_selected = len(record.selected_ids)
    record.diagnostics = dict(result.diagnostics)
    if has_gold:
        for k in RECALL_KS:
            record.recall[str(k)] = recall_at_k(record.ranked_ids, example.gold_passage_ids, k)
            record.hit[str(k)] = hit_at_k(record.ranked_ids, example.gold_passage_ids, k)
        record.recall_selected = recall_at_k(
            record.selected_ids, example.gold_passage_ids, max(1, len(record.selected_ids))
        )

    if llm is not None:
        context = [passages[pid] for pid in record.selected_ids]
        try:
            record.prediction = answer(example.question, context, llm, instruction)
        except ClientError as e:
            record.error = f"answer failed: {e}"
            return record
        record.em = exact_match(record.prediction, example.gold_answers)
        record.f1 = token_f1(record.prediction, example.gold_answers)
    return record


def run_eval(
    dataset: List[QAExample],
    retriever: HypergraphRetriever,
    config: RetrievalConfig,
    passages: Dict[str, Passage],
    llm: Optional[ChatClient] = None,
    max_workers: int = 1,
    instruction: str = QA_INSTRUCTION,
    audit: Optional["AuditTrail"] = None,
) -> EvalReport:
    """Evaluate every example; per-example failures are recorded, not raised.

    Records keep dataset order regardless of `max_workers`.
    """
    config.validate()

    def _one(example: QAExample) -> EvalRecord:
        return evaluate_example(example, retriever, config, passages, llm, instruction)

    if max_workers <= 1 or len(dataset) <= 1:
        records = [_one(e) for e in dataset]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(_one, dataset))

    report = EvalReport(records=records, config=config.to_dict(), qa_enabled=llm is not None)
    if audit is not None:
        for r in records:
            if r.error is not None:
                audit.record("eval_example_failed", level="warning", example_id=r.example_id, error=r.error)
        audit.record("eval_complete", n_examples=len(records), n_errors=report.n_errors)
    return report
