"""Answer and retrieval metrics: exact match, token F1, Recall@k (gold coverage), Hit@k."""

from __future__ import annotations

import re
import string
from collections import Counter
from typing import Sequence

_ARTICLES = re.compile(r"\b(a|an|the)\b")
_PUNCTUATION = set(string.punctuation)


def normalize_answer(text: str) -> str:
    """Lowercase, strip punctuation, drop articles, collapse whitespace."""
    text = (text or "").lower()
    text = "".join(ch for ch in text if ch not in _PUNCTUATION)
    text = _ARTICLES.sub(" ", text)
    return " ".join(text.split())


def exact_match(prediction: str, golds: Sequence[str]) -> int:
    if not golds:
        raise ValueError("exact_match needs at least one gold answer")
    pred = normalize_answer(prediction)
    return int(any(pred == normalize_answer(g) for g in golds))


def _f1(prediction_tokens: Sequence[str], gold_tokens: Sequence[str]) -> float:
    if not prediction_tokens and not gold_tokens:
        return 1.0
    if not prediction_tokens or not gold_tokens:
        return 0.0
    common = Counter(prediction_tokens) & Counter(gold_tokens)
    overlap = sum(common.values())
    if overlap == 0:
        return 0.0
    precision = overlap / len(prediction_tokens)
    recall = overlap / len(gold_tokens)
    return 2 * precision * recall / (precision + recall)


def token_f1(prediction: str, golds: Sequence[str]) -> float:
    """Best multiset token F1 over the gold answers."""
    if not golds:
        raise ValueError("token_f1 needs at least one gold answer")
    pred_tokens = normalize_answer(prediction).split()
    return max(_f1(pred_tokens, normalize_answer(g).split()) for g in golds)


def recall_at_k(ranked_ids: Sequence[str], gold_ids: Sequence[str], k: int) -> float:
    """Fraction of gold passages found among the first k retrieved."""
    if k < 1:
        raise ValueError("k must be >= 1")
    gold = set(gold_ids)
    if not gold:
        raise ValueError("recall_at_k needs at least one gold passage id")
    return len(gold.intersection(ranked_ids[:k])) / len(gold)


def hit_at_k(ranked_ids: Sequence[str], gold_ids: Sequence[str], k: int) -> int:
    """1 when any gold passage is among the first k retrieved."""
    if k < 1:
        raise ValueError("k must be >= 1")
    gold = set(gold_ids)
    return int(any(pid in gold for pid in ranked_ids[:k]))
