"""Tests for the diffusion operator: hand values, dense oracle, spectral and sign properties."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperretrieve.errors import DimensionMismatchError
from hypergraph import apply_diffusion_operator, gather_to_passages, incidence_from_columns, compute_degrees

from tests.unit.oracles import (
    TOY_COLUMNS,
    assert_close,
    dense_incidence,
    dense_operator,
    make_index,
)
from tests.unit.strategies import hypergraphs, unit_floats


def _apply(columns, n_entities, x, w):
    H = incidence_from_columns(columns, n_entities)
    return apply_diffusion_operator(np.asarray(x, dtype=float), H, compute_degrees(H), np.asarray(w, dtype=float))


def test_zero_in_zero_out():
    out = _apply(TOY_COLUMNS, 5, np.zeros(5), np.ones(3))
    assert out.tolist() == [0.0] * 5


def test_single_entity_single_passage():
    out = _apply([[0]], 1, [1.0], [0.5])
    assert out.tolist() == pytest.approx([0.5], abs=1e-15)


def test_toy_one_step_from_einstein():
    x = np.eye(5)[0]
    out = _apply(TOY_COLUMNS, 5, x, np.ones(3))
    assert_close(out, dense_operator(dense_incidence(TOY_COLUMNS, 5), np.ones(3)) @ x)
    assert out[1] > 0  # germany
    assert out[4] == 0  # brussels


def test_toy_hand_values_with_weights():
    out = _apply(TOY_COLUMNS, 5, np.eye(5)[0], [0.9, 0.8, 0.3])
    assert out[0] == pytest.approx(0.45, abs=1e-12)
    assert out[1] == pytest.approx(0.45 / np.sqrt(2), abs=1e-12)
    assert out[2:].tolist() == [0.0, 0.0, 0.0]


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        _apply(TOY_COLUMNS, 5, np.zeros(4), np.ones(3))
    with pytest.raises(DimensionMismatchError):
        _apply(TOY_COLUMNS, 5, np.zeros(5), np.ones(2))


def test_gather_to_passages():
    H = incidence_from_columns(TOY_COLUMNS, 5)
    assert gather_to_passages(np.arange(5, dtype=float), H).tolist() == [1.0, 6.0, 7.0]


@st.composite
def weighted_graphs(draw):
    columns, n_entities = draw(hypergraphs())
    w = np.array(draw(st.lists(unit_floats, min_size=len(columns), max_size=len(columns))))
    x = np.array(draw(st.lists(st.floats(-1, 1), min_size=n_entities, max_size=n_entities)))
    return columns, n_entities, w, x


@settings(max_examples=200, deadline=None)
@given(weighted_graphs())
def test_matches_dense_oracle(case):
    columns, n_entities, w, x = case
    expected = dense_operator(dense_incidence(columns, n_entities), w) @ x
    assert_close(_apply(columns, n_entities, x, w), expected)


@settings(max_examples=200, deadline=None)
@given(weighted_graphs())
def test_dense_operator_symmetric_with_bounded_spectrum(case):
    columns, n_entities, w, _ = case
    L = dense_operator(dense_incidence(columns, n_entities), w)
    assert np.max(np.abs(L - L.T)) <= 1e-12
    eigenvalues = np.linalg.eigvalsh((L + L.T) / 2)
    assert eigenvalues.min() >= -1e-9
    assert eigenvalues.max() <= 1 + 1e-9


@settings(max_examples=100, deadline=None)
@given(weighted_graphs())
def test_nonnegative_inputs_give_nonnegative_output(case):
    columns, n_entities, w, x = case
    out = _apply(columns, n_entities, np.abs(x), w)
    assert np.all(out >= 0)


@settings(max_examples=100, deadline=None)
@given(weighted_graphs())
def test_entityless_passage_is_inert(case):
    columns, n_entities, w, x = case
    before = _apply(columns, n_entities, x, w)
    after = _apply(columns + [[]], n_entities, x, np.append(w, 1.0))
    assert np.array_equal(before, after)


def test_index_helper_matches_raw_incidence():
    index = make_index(TOY_COLUMNS, 5)
    assert index.n_entities == 5
    assert index.n_passages == 3
