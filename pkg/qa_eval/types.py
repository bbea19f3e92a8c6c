"""Types for evaluation: per-example records and the aggregated report."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

RECALL_KS = (5, 10)
TIMING_FIELDS = ("retrieval_seconds",)


@dataclass
class EvalRecord:
    """One evaluated question. `error` set means metrics were not computed."""

    example_id: str
    question: str
    selected_ids: List[str] = field(default_factory=list)
    ranked_ids: List[str] = field(default_factory=list)
    recall: Dict[str, float] = field(default_factory=dict)
    hit: Dict[str, int] = field(default_factory=dict)
    recall_selected: Optional[float] = None
    n_selected: int = 0
    prediction: Optional[str] = None
    em: Optional[int] = None
    f1: Optional[float] = None
    retrieval_seconds: float = 0.0
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        d = asdict(self)
        if not include_timing:
            for name in TIMING_FIELDS:
                d.pop(name, None)
        return d


def _mean(values: Sequence[float]) -> Optional[float]:
    """None for an empty set, so an unscored column is not reported as zero."""
    return sum(values) / len(values) if values else None


@dataclass
class EvalReport:
    """Per-example records plus aggregates recomputed from them."""

    records: List[EvalRecord]
    config: Dict[str, Any] = field(default_factory=dict)
    qa_enabled: bool = False

    @property
    def scored(self) -> List[EvalRecord]:
        return [r for r in self.records if r.error is None]

    @property
    def n_errors(self) -> int:
        return sum(1 for r in self.records if r.error is not None)

    def aggregates(self) -> Dict[str, Any]:
        scored = self.scored
        out: Dict[str, Any] = {
            "n_examples": len(self.records),
            "n_scored": len(scored),
            "n_errors": self.n_errors,
        }
        retrieval = [r for r in scored if r.recall]
        for k in RECALL_KS:
            out[f"recall@{k}"] = _mean([r.recall[str(k)] for r in retrieval])
            out[f"hit@{k}"] = _mean([r.hit[str(k)] for r in retrieval])
        out["recall_selected"] = _mean([r.recall_selected for r in scored if r.recall_selected is not None])
        out["mean_selected"] = _mean([r.n_selected for r in scored])
        if self.qa_enabled:
            qa = [r for r in scored if r.em is not None]
            out["em"] = _mean([r.em for r in qa])
            out["f1"] = _mean([r.f1 for r in qa])
        return out

    def total_retrieval_seconds(self) -> float:
        return sum(r.retrieval_seconds for r in self.records)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        d: Dict[str, Any] = {
            "config": dict(self.config),
            "qa_enabled": self.qa_enabled,
            "aggregates": self.aggregates(),
            "records": [r.to_dict(include_timing=include_timing) for r in self.records],
        }
        if include_timing:
            d["total_retrieval_seconds"] = self.total_retrieval_seconds()
        return d

    def timing(self) -> Dict[str, Any]:
        return {
            "total_retrieval_seconds": self.total_retrieval_seconds(),
            "n_examples": len(self.records),
            "per_example_seconds": [
                {"example_id": r.example_id, "retrieval_seconds": r.retrieval_seconds} for r in self.records
            ],
        }
