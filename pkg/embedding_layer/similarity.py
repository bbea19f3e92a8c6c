"""Cosine similarity helpers. A zero-norm vector has cosine 0 with everything."""

from __future__ import annotations

import numpy as np

from hyperretrieve.errors import DimensionMismatchError

from embedding_layer.types import EmbeddingMatrix


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise DimensionMismatchError(f"cosine of vectors with dims {a.shape[0]} and {b.shape[0]}")
    na = float(np.sqrt(np.dot(a, a)))
    nb = float(np.sqrt(np.dot(b, b)))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0))


def _unit_rows(values: np.ndarray) -> np.ndarray:
    m = np.asarray(values, dtype=np.float64)
    norms = np.sqrt(np.einsum("ij,ij->i", m, m))
    out = np.zeros_like(m)
    nonzero = norms > 0
    out[nonzero] = m[nonzero] / norms[nonzero, None]
    return out


def cosine_matrix(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """All-pairs cosine, shape (len(left), len(right))."""
    left = np.atleast_2d(np.asarray(left, dtype=np.float64))
    right = np.atleast_2d(np.asarray(right, dtype=np.float64))
    if left.shape[1] != right.shape[1]:
        raise DimensionMismatchError(f"cosine between dims {left.shape[1]} and {right.shape[1]}")
    return np.clip(_unit_rows(left) @ _unit_rows(right).T, -1.0, 1.0)


def cosine_to_rows(query: np.ndarray, rows: EmbeddingMatrix) -> np.ndarray:
    """Cosine of one vector against every row."""
    if rows.rows == 0:
        return np.zeros(0, dtype=np.float64)
    return cosine_matrix(np.asarray(query).reshape(1, -1), rows.values)[0]


def max_sim_to_query_entities(query_entity_rows: EmbeddingMatrix, corpus_entity_rows: EmbeddingMatrix) -> np.ndarray:
    """v_i = max over query entities of cosine(query entity, corpus entity i).

    No query entities gives the zero vector.
    """
    n = corpus_entity_rows.rows
    if query_entity_rows.rows == 0 or n == 0:
        return np.zeros(n, dtype=np.float64)
    return cosine_matrix(query_entity_rows.values, corpus_entity_rows.values).max(axis=0)
