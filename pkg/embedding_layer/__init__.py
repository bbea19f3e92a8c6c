"""Embedding layer: encoders, content-hash cache, cosine similarity."""

from embedding_layer.cache import EmbeddingCache, content_key
from embedding_layer.encoders import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_OFFLINE_DIM,
    EmbeddingError,
    Encoder,
    HashingEncoder,
    RemoteEncoder,
    embed_batch,
)
from embedding_layer.similarity import cosine, cosine_matrix, cosine_to_rows, max_sim_to_query_entities
from embedding_layer.types import EmbeddingMatrix

__all__ = [
    "DEFAULT_BATCH_SIZE",
    "DEFAULT_OFFLINE_DIM",
    "EmbeddingCache",
    "EmbeddingError",
    "EmbeddingMatrix",
    "Encoder",
    "HashingEncoder",
    "RemoteEncoder",
    "content_key",
    "cosine",
    "cosine_matrix",
    "cosine_to_rows",
    "embed_batch",
    "max_sim_to_query_entities",
]
