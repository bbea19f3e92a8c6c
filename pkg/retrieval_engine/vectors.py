"""Query-side similarity vectors: entity vector x (thresholded) and passage vector p (raw cosine)."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np

from hyperretrieve.clients import ClientError

from corpus_layer import EntityExtractor, extract_query_entities
from embedding_layer import EmbeddingCache, EmbeddingMatrix, Encoder, cosine_to_rows, embed_batch, max_sim_to_query_entities
from hypergraph import HypergraphIndex, IndexIntegrityError

if TYPE_CHECKING:
    from output_layer.audit_trail import AuditTrail


def threshold_entity_similarity(v: np.ndarray, eta: float) -> np.ndarray:
    """x_i = v_i if v_i > eta else 0 (strict)."""
    v = np.asarray(v, dtype=np.float64)
    return np.where(v > eta, v, 0.0)


def build_entity_similarity(
    query: str,
    index: HypergraphIndex,
    entity_rows: EmbeddingMatrix,
    encoder: Encoder,
    extractor: EntityExtractor,
    eta: float,
    cache: Optional[EmbeddingCache] = None,
    audit: Optional["AuditTrail"] = None,
) -> Tuple[np.ndarray, Tuple[str, ...], Optional[str]]:
    """Returns (x, query entities, warning).

    A failed query extraction degrades to no entities (x = 0) with a warning.
    """
    if entity_rows.rows != index.n_entities:
        raise IndexIntegrityError(
            f"{entity_rows.rows} entity embeddings for {index.n_entities} catalog entries"
        )
    if entity_rows.row_keys and entity_rows.row_keys != index.catalog.entities:
        raise IndexIntegrityError("Entity embeddings are keyed to a different catalog order")
    warning: Optional[str] = None
    try:
        entities = extract_query_entities(query, extractor).entities
    except ClientError as e:
        warning = f"query entity extraction failed: {e}"
        entities = ()
        if audit is not None:
            audit.record("query_extraction_failed", level="warning", query=query, error=str(e))
    query_rows = embed_batch(list(entities), encoder, cache)
    v = max_sim_to_query_entities(query_rows, entity_rows)
    return threshold_entity_similarity(v, eta), tuple(entities), warning


def build_passage_similarity(
    query: str,
    index: HypergraphIndex,
    passage_rows: EmbeddingMatrix,
    encoder: Encoder,
    cache: Optional[EmbeddingCache] = None,
) -> np.ndarray:
    """p_j = cosine(E(query), E(passage j)); no thresholding."""
    if passage_rows.rows != index.n_passages:
        raise IndexIntegrityError(
            f"{passage_rows.rows} passage embeddings for {index.n_passages} passages"
        )
    if passage_rows.row_keys and passage_rows.row_keys != index.passage_ids:
        raise IndexIntegrityError("Passage embeddings are keyed to a different passage order")
    query_row = embed_batch([query], encoder, cache)
    return cosine_to_rows(query_row.values[0], passage_rows)
