"""Tests for cosine helpers."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from embedding_layer import EmbeddingMatrix, HashingEncoder, cosine, cosine_to_rows, max_sim_to_query_entities
from hyperretrieve.errors import DimensionMismatchError


def test_cosine_cases():
    v = np.array([1.0, 2.0, 3.0])
    assert cosine(v, v) == pytest.approx(1.0)
    assert cosine(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0
    assert cosine(np.zeros(3), v) == 0.0


def test_cosine_dim_mismatch():
    with pytest.raises(DimensionMismatchError):
        cosine(np.ones(2), np.ones(3))


def test_max_sim_identity_hits_one():
    rows = HashingEncoder().encode(["albert einstein", "germany", "berlin"])
    corpus = EmbeddingMatrix(values=rows)
    query = EmbeddingMatrix(values=rows[1:2])
    v = max_sim_to_query_entities(query, corpus)
    assert v[1] == pytest.approx(1.0)


def test_max_sim_no_query_entities():
    corpus = EmbeddingMatrix(values=np.eye(3))
    assert max_sim_to_query_entities(EmbeddingMatrix.empty(3), corpus).tolist() == [0.0, 0.0, 0.0]


def test_max_sim_matches_pairwise_loop():
    enc = HashingEncoder()
    corpus = enc.encode(["einstein", "germany", "european union"])
    query = enc.encode(["european commission", "germany"])
    v = max_sim_to_query_entities(EmbeddingMatrix(values=query), EmbeddingMatrix(values=corpus))
    brute = [max(cosine(q, c) for q in query) for c in corpus]
    assert v == pytest.approx(brute, abs=1e-12)


def test_cosine_to_rows_matches_scalar():
    enc = HashingEncoder()
    rows = enc.encode(["albert einstein was born in germany", "berlin", "brussels"])
    q = enc.encode_one("where was einstein born")
    p = cosine_to_rows(q, EmbeddingMatrix(values=rows))
    assert p == pytest.approx([cosine(q, r) for r in rows], abs=1e-12)


vectors = st.lists(st.floats(-1, 1), min_size=4, max_size=4).map(np.array)


@settings(max_examples=100, deadline=None)
@given(st.lists(vectors, min_size=1, max_size=4), st.lists(vectors, min_size=1, max_size=5))
def test_adding_query_entity_never_decreases(query_rows, corpus_rows):
    corpus = EmbeddingMatrix(values=np.vstack(corpus_rows))
    fewer = max_sim_to_query_entities(EmbeddingMatrix(values=np.vstack(query_rows[:1])), corpus)
    more = max_sim_to_query_entities(EmbeddingMatrix(values=np.vstack(query_rows)), corpus)
    assert np.all(more >= fewer - 1e-12)
    reversed_rows = max_sim_to_query_entities(EmbeddingMatrix(values=np.vstack(query_rows[::-1])), corpus)
    assert np.allclose(more, reversed_rows, atol=1e-12)
