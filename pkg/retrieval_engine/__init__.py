"""Retrieval engine: hypergraph diffusion plus semantic and structural enhancement."""

from retrieval_engine.diffusion import diffuse, edge_weights
from retrieval_engine.engine import HypergraphRetriever, rank_vectors, retrieve
from retrieval_engine.enhancement import (
    SelectionError,
    semantic_enhance,
    shared_entity_counts,
    structural_enhance,
    top_k,
)
from retrieval_engine.types import QueryArtifacts, RankedResult, RetrievalConfig
from retrieval_engine.vectors import build_entity_similarity, build_passage_similarity, threshold_entity_similarity

__all__ = [
    "HypergraphRetriever",
    "QueryArtifacts",
    "RankedResult",
    "RetrievalConfig",
    "SelectionError",
    "build_entity_similarity",
    "build_passage_similarity",
    "diffuse",
    "edge_weights",
    "rank_vectors",
    "retrieve",
    "semantic_enhance",
    "shared_entity_counts",
    "structural_enhance",
    "threshold_entity_similarity",
    "top_k",
]
