"""
Retrieval pipeline: similarity vectors -> diffusion -> semantic blend -> structural selection.

`rank_vectors` is the pure core (timed by the evaluation harness); `HypergraphRetriever`
adds the query-side extraction and embedding around it.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Dict, Optional, Tuple

import numpy as np

from corpus_layer import EntityExtractor
from embedding_layer import EmbeddingCache, EmbeddingMatrix, Encoder
from hypergraph import HypergraphIndex

from retrieval_engine.diffusion import diffuse
from retrieval_engine.enhancement import scored, semantic_enhance, structural_enhance, top_k
from retrieval_engine.types import QueryArtifacts, RankedResult, RetrievalConfig
from retrieval_engine.vectors import build_entity_similarity, build_passage_similarity

if TYPE_CHECKING:
    from output_layer.audit_trail import AuditTrail

# Query-side embedding rows kept before the cache starts over.
QUERY_CACHE_ROWS = 4096


def rank_vectors(
    x: np.ndarray,
    p: np.ndarray,
    index: HypergraphIndex,
    config: RetrievalConfig,
    query: str = "",
    artifacts: Optional[QueryArtifacts] = None,
) -> RankedResult:
    """Rank passages from precomputed x and p. Fills `artifacts` (x_t, p_t, p_tilde) when given."""
    config.validate()
    x = np.asarray(x, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    n = index.n_passages
    diagnostics: Dict[str, Any] = {
        "nonzero_x": int(np.count_nonzero(x)),
        "steps_run": 0,
        "fallback": None,
    }
    if n == 0:
        diagnostics["n_selected"] = 0
        return RankedResult(query=query, ranking=(), selected=(), k2=0, diagnostics=diagnostics)

    k1, k2 = min(config.k1, n), min(config.k2, n)
    if (k1, k2) != (config.k1, config.k2):
        diagnostics["clamped_k"] = {"k1": k1, "k2": k2}

    if not config.use_hypergraph:
        diagnostics["fallback"] = "dense_only"
        x_t, p_t, p_tilde = x, np.zeros(n), p.copy()
    elif diagnostics["nonzero_x"] == 0:
        # p^(t) would be all zeros; rank by p directly.
        diagnostics["fallback"] = "no_entity_above_eta"
        x_t, p_t, p_tilde = x, np.zeros(n), p.copy()
    else:
        x_t, p_t = diffuse(x, p, index, config.steps, config.use_weight_matrix)
        diagnostics["steps_run"] = config.steps
        p_tilde = semantic_enhance(p_t, p, config.beta, config.use_semantic_enhancement)

    ranking = top_k(p_tilde, max(k2, config.ranking_depth))
    if config.use_structural_enhancement:
        selected = structural_enhance(p_tilde, index, k1, k2)
    else:
        selected = [int(j) for j in ranking[:k2]]
    diagnostics["n_selected"] = len(selected)

    if artifacts is not None:
        artifacts.x_t, artifacts.p_t, artifacts.p_tilde = x_t, p_t, p_tilde
    return RankedResult(
        query=query,
        ranking=scored(ranking, p_tilde),
        selected=scored(selected, p_tilde),
        k2=k2,
        diagnostics=diagnostics,
    )


class HypergraphRetriever:
    """Query-time view over a loaded index and its aligned embeddings.

    Immutable after construction; `retrieve` is safe to call from many threads.
    """

    def __init__(
        self,
        index: HypergraphIndex,
        passage_rows: EmbeddingMatrix,
        entity_rows: EmbeddingMatrix,
        encoder: Encoder,
        extractor: EntityExtractor,
        audit: Optional["AuditTrail"] = None,
    ):
        self.index = index
        self.passage_rows = passage_rows
        self.entity_rows = entity_rows
        self.encoder = encoder
        self.extractor = extractor
        self._audit = audit
        self._query_cache = EmbeddingCache(None, encoder.encoder_id, encoder.dim)

    def _query_rows(self) -> EmbeddingCache:
        cache = self._query_cache
        if len(cache) >= QUERY_CACHE_ROWS:
            # In-flight queries keep the cache object they already hold.
            cache = self._query_cache = EmbeddingCache(None, self.encoder.encoder_id, self.encoder.dim)
        return cache

    def query_artifacts(self, query: str, config: RetrievalConfig) -> QueryArtifacts:
        """Extraction and embedding for one query (everything outside the timed core)."""
        cache = self._query_rows()
        p = build_passage_similarity(query, self.index, self.passage_rows, self.encoder, cache)
        if config.use_hypergraph:
            x, entities, warning = build_entity_similarity(
                query,
                self.index,
                self.entity_rows,
                self.encoder,
                self.extractor,
                config.eta,
                cache=cache,
                audit=self._audit,
            )
        else:
            x, entities, warning = np.zeros(self.index.n_entities), (), None
        artifacts = QueryArtifacts(x=x, p=p, query_entities=entities)
        if warning:
            artifacts.warnings.append(warning)
        return artifacts

    def rank(self, query: str, artifacts: QueryArtifacts, config: RetrievalConfig) -> RankedResult:
        result = rank_vectors(artifacts.x, artifacts.p, self.index, config, query=query, artifacts=artifacts)
        result.diagnostics["query_entities"] = list(artifacts.query_entities)
        if artifacts.warnings:
            result.diagnostics["warnings"] = list(artifacts.warnings)
        if self._audit is not None and result.diagnostics.get("fallback"):
            self._audit.record("retrieval_fallback", query=query, fallback=result.diagnostics["fallback"])
        return result

    def retrieve(self, query: str, config: RetrievalConfig) -> RankedResult:
        return self.retrieve_with_artifacts(query, config)[0]

    def retrieve_with_artifacts(self, query: str, config: RetrievalConfig) -> Tuple[RankedResult, QueryArtifacts]:
        config.validate()
        artifacts = self.query_artifacts(query, config)
        return self.rank(query, artifacts, config), artifacts


def retrieve(query: str, retriever: HypergraphRetriever, config: RetrievalConfig) -> RankedResult:
    """Full pipeline for one query string."""
    return retriever.retrieve(query, config)
