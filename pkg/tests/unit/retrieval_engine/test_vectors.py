"""Tests for the query-side similarity vectors."""

import numpy as np
import pytest

from corpus_layer import CapitalizedSpanExtractor
from embedding_layer import EmbeddingMatrix, HashingEncoder, cosine
from hypergraph import IndexIntegrityError
from retrieval_engine import build_entity_similarity, build_passage_similarity, threshold_entity_similarity

from tests.unit.oracles import TOY_CORPUS, TOY_ENTITIES, toy_index

ENCODER = HashingEncoder(4096)
ENTITY_ROWS = EmbeddingMatrix(values=ENCODER.encode(list(TOY_ENTITIES)))
PASSAGE_ROWS = EmbeddingMatrix(values=ENCODER.encode([row["text"] for row in TOY_CORPUS]))


def test_threshold_is_strict():
    v = np.array([0.8, 0.81, 1.0, 0.2])
    assert threshold_entity_similarity(v, 0.8).tolist() == [0.0, 0.81, 1.0, 0.0]
    assert not threshold_entity_similarity(v, 1.0).any()


def test_exact_entity_match_scores_one():
    x, entities, warning = build_entity_similarity(
        "Where is Germany?", toy_index(), ENTITY_ROWS, ENCODER, CapitalizedSpanExtractor(), eta=0.8
    )
    assert entities == ("germany",)
    assert warning is None
    assert x[TOY_ENTITIES.index("germany")] == pytest.approx(1.0)


def test_eta_one_gives_zero_vector():
    x, _, _ = build_entity_similarity(
        "Where is Germany?", toy_index(), ENTITY_ROWS, ENCODER, CapitalizedSpanExtractor(), eta=1.0
    )
    assert not x.any()


def test_eta_zero_matches_pairwise_cosines():
    x, entities, _ = build_entity_similarity(
        "Brussels and Berlin", toy_index(), ENTITY_ROWS, ENCODER, CapitalizedSpanExtractor(), eta=0.0
    )
    query_rows = ENCODER.encode(list(entities))
    brute = [max(cosine(q, e) for q in query_rows) for e in ENTITY_ROWS.values]
    expected = [v if v > 0 else 0.0 for v in brute]
    assert x == pytest.approx(expected, abs=1e-12)


def test_passage_similarity_identity_and_zero_query():
    p = build_passage_similarity(TOY_CORPUS[1]["text"], toy_index(), PASSAGE_ROWS, ENCODER)
    assert p[1] == pytest.approx(1.0)
    assert not build_passage_similarity("?!", toy_index(), PASSAGE_ROWS, ENCODER).any()


def test_passage_similarity_matches_scalar_cosine():
    query = "Albert Einstein and the European Union"
    p = build_passage_similarity(query, toy_index(), PASSAGE_ROWS, ENCODER)
    q = ENCODER.encode_one(query)
    assert p == pytest.approx([cosine(q, r) for r in PASSAGE_ROWS.values], abs=1e-6)


def test_row_count_mismatch_is_integrity_error():
    short = EmbeddingMatrix(values=PASSAGE_ROWS.values[:2])
    with pytest.raises(IndexIntegrityError):
        build_passage_similarity("x", toy_index(), short, ENCODER)
    with pytest.raises(IndexIntegrityError):
        build_entity_similarity("x", toy_index(), EmbeddingMatrix(values=ENTITY_ROWS.values[:1]), ENCODER, CapitalizedSpanExtractor(), 0.5)


def test_rows_keyed_to_another_order_are_integrity_error():
    index = toy_index()
    swapped = PASSAGE_ROWS.with_keys(index.passage_ids[::-1])
    with pytest.raises(IndexIntegrityError, match="passage order"):
        build_passage_similarity("x", index, swapped, ENCODER)
    keyed = ENTITY_ROWS.with_keys(reversed(TOY_ENTITIES))
    with pytest.raises(IndexIntegrityError, match="catalog order"):
        build_entity_similarity("x", index, keyed, ENCODER, CapitalizedSpanExtractor(), 0.5)


def test_rows_keyed_in_index_order_are_accepted():
    index = toy_index()
    keyed = PASSAGE_ROWS.with_keys(index.passage_ids)
    assert build_passage_similarity("x", index, keyed, ENCODER) == pytest.approx(
        build_passage_similarity("x", index, PASSAGE_ROWS, ENCODER)
    )
