"""Retrieval enhancement: semantic blend with dense scores, structural (shared-entity) selection."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from hypergraph import HypergraphIndex


class SelectionError(ValueError):
    pass


def semantic_enhance(p_t: np.ndarray, p: np.ndarray, beta: float, enabled: bool = True) -> np.ndarray:
    """p~ = (1 - beta) * p^(t) + beta * p, or p^(t) unchanged when disabled."""
    p_t = np.asarray(p_t, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    if p_t.shape != p.shape:
        raise ValueError(f"p_t {p_t.shape} and p {p.shape} differ in shape")
    if not enabled:
        return p_t.copy()
    return (1.0 - beta) * p_t + beta * p


def top_k(scores: np.ndarray, k: int) -> np.ndarray:
    """Column indices of the k best scores: descending score, ties by ascending index."""
    scores = np.asarray(scores, dtype=np.float64)
    n = scores.shape[0]
    k = max(0, min(k, n))
    if k == 0:
        return np.zeros(0, dtype=np.int64)
    columns = np.arange(n)
    if k < n:
        # Keep every column scoring at least the k-th best so ties at the cut stay in play.
        kth = np.partition(scores, n - k)[n - k]
        columns = np.flatnonzero(scores >= kth)
    order = np.lexsort((columns, -scores[columns]))
    return columns[order][:k]


def shared_entity_counts(index: HypergraphIndex, seeds: np.ndarray) -> np.ndarray:
    """s = H^T H h(seeds): per passage, entities shared with the seeds, counted with multiplicity."""
    s = np.zeros(index.n_passages, dtype=np.int64)
    for column in seeds:
        for entity in index.incidence.passage_entities(int(column)):
            s[index.incidence.entity_passages(int(entity))] += 1
    return s


def structural_enhance(p_tilde: np.ndarray, index: HypergraphIndex, k1: int, k2: int) -> List[int]:
    """Top-k1 seeds plus the members of top-k2 that share at least one entity with a seed.

    Seeds are always kept, even an entityless one. Result is ordered like the
    top-k2 list. k2 beyond the passage count is clamped.
    """
    n = index.n_passages
    if k1 < 1 or k2 < k1:
        raise SelectionError(f"need 1 <= k1 <= k2, got k1={k1}, k2={k2}")
    if k1 > n:
        raise SelectionError(f"k1={k1} exceeds the passage count {n}")
    candidates = top_k(p_tilde, min(k2, n))
    seeds = candidates[:k1]
    s = shared_entity_counts(index, seeds)
    seed_set = set(int(j) for j in seeds)
    return [int(j) for j in candidates if int(j) in seed_set or s[j] > 0]


def scored(columns, scores: np.ndarray) -> Tuple[Tuple[int, float], ...]:
    return tuple((int(j), float(scores[j])) for j in columns)
