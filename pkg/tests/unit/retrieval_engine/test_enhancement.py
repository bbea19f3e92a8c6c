"""Tests for the semantic blend, top-k ordering and structural selection."""

import numpy as np
import pytest

from retrieval_engine import SelectionError, semantic_enhance, shared_entity_counts, structural_enhance, top_k

from tests.unit.oracles import make_index, toy_index


def test_semantic_enhance_endpoints_and_midpoint():
    p_t = np.array([0.2, 0.4])
    p = np.array([0.6, 0.0])
    assert semantic_enhance(p_t, p, 1.0).tolist() == p.tolist()
    assert semantic_enhance(p_t, p, 0.0).tolist() == p_t.tolist()
    assert semantic_enhance(p_t, p, 0.5) == pytest.approx([0.4, 0.2])
    assert semantic_enhance(p_t, p, 0.5, enabled=False).tolist() == p_t.tolist()


def test_semantic_enhance_shape_mismatch():
    with pytest.raises(ValueError):
        semantic_enhance(np.zeros(2), np.zeros(3), 0.5)


def test_top_k_ties_by_ascending_index():
    assert top_k(np.array([0.5, 0.7, 0.5, 0.7]), 3).tolist() == [1, 3, 0]
    assert top_k(np.array([0.1, 0.1, 0.1]), 2).tolist() == [0, 1]


def test_top_k_clamps():
    assert top_k(np.array([0.3, 0.9]), 5).tolist() == [1, 0]
    assert top_k(np.array([0.3]), 0).tolist() == []


def test_toy_selection_keeps_shared_entity_passage():
    # p~ from one weighted step starting at "einstein", beta = 0.5
    p_tilde = np.array([0.7955, 0.527, 0.15])
    assert structural_enhance(p_tilde, toy_index(), k1=1, k2=3) == [0, 1]


def test_shared_entity_counts_multiplicity():
    index = make_index([[0, 1], [0, 1], [2]], 3)
    assert shared_entity_counts(index, np.array([0])).tolist() == [2, 2, 0]


def test_k1_equals_k2_is_top_k1():
    p_tilde = np.array([0.1, 0.9, 0.5, 0.3])
    index = make_index([[0], [1], [2], [3]], 4)
    assert structural_enhance(p_tilde, index, 2, 2) == [1, 2]


def test_entityless_seed_is_retained():
    index = make_index([[], [0], [1]], 2)
    assert structural_enhance(np.array([0.9, 0.5, 0.4]), index, 1, 3) == [0]


def test_contract_errors():
    index = toy_index()
    with pytest.raises(SelectionError):
        structural_enhance(np.zeros(3), index, 4, 5)
    with pytest.raises(SelectionError):
        structural_enhance(np.zeros(3), index, 2, 1)


def test_k2_beyond_corpus_is_clamped():
    assert structural_enhance(np.array([0.7955, 0.527, 0.15]), toy_index(), 1, 10) == [0, 1]
