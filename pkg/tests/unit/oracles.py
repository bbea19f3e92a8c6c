"""Dense NumPy references and small builders shared by the unit tests."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from corpus_layer import EntityCatalog
from hypergraph import HypergraphIndex, compute_degrees, incidence_from_columns

# P1={einstein, germany}, P2={germany, berlin, eu}, P3={eu, brussels}
TOY_ENTITIES = ("einstein", "germany", "berlin", "eu", "brussels")
TOY_COLUMNS = [[0, 1], [1, 2, 3], [3, 4]]
TOY_WEIGHTS = np.array([0.9, 0.8, 0.3])


def make_index(columns: Sequence[Sequence[int]], n_entities: int) -> HypergraphIndex:
    incidence = incidence_from_columns(columns, n_entities)
    return HypergraphIndex(
        catalog=EntityCatalog.from_list(f"e{i}" for i in range(n_entities)),
        incidence=incidence,
        degrees=compute_degrees(incidence),
        passage_ids=tuple(f"p{j:02d}" for j in range(len(columns))),
    )


def toy_index() -> HypergraphIndex:
    incidence = incidence_from_columns(TOY_COLUMNS, len(TOY_ENTITIES))
    return HypergraphIndex(
        catalog=EntityCatalog.from_list(TOY_ENTITIES),
        incidence=incidence,
        degrees=compute_degrees(incidence),
        passage_ids=("P1", "P2", "P3"),
    )


def dense_incidence(columns: Sequence[Sequence[int]], n_entities: int) -> np.ndarray:
    H = np.zeros((n_entities, len(columns)))
    for j, col in enumerate(columns):
        for i in col:
            H[i, j] = 1.0
    return H


def _pinv_diag(values: np.ndarray, power: float) -> np.ndarray:
    out = np.zeros_like(values, dtype=np.float64)
    nz = values > 0
    out[nz] = values[nz] ** power
    return np.diag(out)


def dense_operator(H: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Dv^-1/2 H W De^-1 H^T Dv^-1/2 with zero pseudo-inverses for zero degrees."""
    dv = H.sum(axis=1)
    de = H.sum(axis=0)
    Dv = _pinv_diag(dv, -0.5)
    De = _pinv_diag(de, -1.0)
    return Dv @ H @ np.diag(weights) @ De @ H.T @ Dv


def dense_diffuse(H: np.ndarray, x: np.ndarray, weights: np.ndarray, steps: int):
    L = dense_operator(H, weights)
    x_t = np.linalg.matrix_power(L, steps) @ x
    return x_t, weights * (H.T @ x_t)


def dense_p_tilde(
    H: np.ndarray,
    x: np.ndarray,
    p: np.ndarray,
    steps: int,
    beta: float,
    use_weight_matrix: bool = True,
    use_semantic_enhancement: bool = True,
) -> np.ndarray:
    w = np.clip(p, 0.0, 1.0) if use_weight_matrix else np.ones_like(p)
    _, p_t = dense_diffuse(H, x, w, steps)
    if not use_semantic_enhancement:
        return p_t
    return (1.0 - beta) * p_t + beta * p


def dense_ranking(scores: np.ndarray) -> list:
    """Descending score, ties by ascending index."""
    return sorted(range(len(scores)), key=lambda j: (-scores[j], j))


def assert_close(actual: np.ndarray, expected: np.ndarray, rel: float = 1e-9) -> None:
    actual = np.asarray(actual, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    assert actual.shape == expected.shape
    if expected.size == 0:
        return
    scale = max(1.0, float(np.max(np.abs(expected))))
    assert float(np.max(np.abs(actual - expected))) <= rel * scale


# The same three passages as text, for the offline end-to-end path.
TOY_CORPUS = [
    {"id": "p1", "title": "", "text": "Albert Einstein was born in Germany."},
    {"id": "p2", "title": "", "text": "Berlin is the capital of Germany and a member of the European Union."},
    {"id": "p3", "title": "", "text": "European Union institutions sit in Brussels."},
]
TOY_QUERY = "Which country was Albert Einstein born in?"


def toy_retriever(extractor=None, dim: int = 256, audit=None):
    """HypergraphRetriever over TOY_CORPUS built in memory with the offline components."""
    from corpus_layer import CapitalizedSpanExtractor, build_catalog, extract_corpus
    from embedding_layer import HashingEncoder, embed_batch
    from hypergraph import build_incidence
    from hyperretrieve.entities import Passage
    from retrieval_engine import HypergraphRetriever

    passages = [Passage(**row) for row in TOY_CORPUS]
    offline = CapitalizedSpanExtractor()
    entity_sets = extract_corpus(passages, offline, max_workers=1)
    catalog = build_catalog(entity_sets)
    incidence = build_incidence(entity_sets, catalog)
    encoder = HashingEncoder(dim)
    index = HypergraphIndex(
        catalog=catalog,
        incidence=incidence,
        degrees=compute_degrees(incidence),
        passage_ids=tuple(p.id for p in passages),
    )
    return HypergraphRetriever(
        index,
        embed_batch([p.embedding_text() for p in passages], encoder),
        embed_batch(catalog.to_list(), encoder),
        encoder,
        extractor or offline,
        audit=audit,
    )
