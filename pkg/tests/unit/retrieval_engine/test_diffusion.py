"""Tests for multi-step diffusion."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperretrieve.errors import DimensionMismatchError
from retrieval_engine import diffuse, edge_weights

from tests.unit.oracles import (
    TOY_COLUMNS,
    TOY_WEIGHTS,
    assert_close,
    dense_diffuse,
    dense_incidence,
    make_index,
    toy_index,
)
from tests.unit.strategies import retrieval_instances


def test_edge_weights_clamp_or_ones():
    p = np.array([-0.2, 0.5, 1.0])
    assert edge_weights(p, True).tolist() == [0.0, 0.5, 1.0]
    assert edge_weights(p, False).tolist() == [1.0, 1.0, 1.0]


def test_zero_steps_is_weighted_gather():
    x = np.array([0.9, 0.0, 0.0, 0.85, 0.0])
    _, p_t = diffuse(x, TOY_WEIGHTS, toy_index(), steps=0)
    assert p_t.tolist() == (TOY_WEIGHTS * np.array([0.9, 0.85, 0.85])).tolist()


def test_zero_x_stays_zero():
    _, p_t = diffuse(np.zeros(5), TOY_WEIGHTS, toy_index(), steps=4)
    assert not p_t.any()


def test_toy_one_step_from_einstein():
    x = np.eye(5)[0]
    x_t, p_t = diffuse(x, TOY_WEIGHTS, toy_index(), steps=1)
    exp_x, exp_p = dense_diffuse(dense_incidence(TOY_COLUMNS, 5), x, TOY_WEIGHTS, 1)
    assert_close(x_t, exp_x)
    assert_close(p_t, exp_p)
    assert p_t[0] == pytest.approx(0.9 * (0.45 + 0.45 / np.sqrt(2)), abs=1e-12)
    assert p_t[0] > p_t[1] > p_t[2]
    assert p_t[2] == 0.0


def test_dimension_checks():
    with pytest.raises(DimensionMismatchError):
        diffuse(np.zeros(4), TOY_WEIGHTS, toy_index(), 1)
    with pytest.raises(DimensionMismatchError):
        diffuse(np.zeros(5), np.ones(2), toy_index(), 1)


@settings(max_examples=100, deadline=None)
@given(retrieval_instances(), st.integers(0, 6))
def test_matches_dense_oracle(case, steps):
    columns, n_entities, x, p = case
    w = np.clip(p, 0, 1)
    x_t, p_t = diffuse(x, p, make_index(columns, n_entities), steps)
    exp_x, exp_p = dense_diffuse(dense_incidence(columns, n_entities), x, w, steps)
    assert_close(x_t, exp_x)
    assert_close(p_t, exp_p)


@settings(max_examples=100, deadline=None)
@given(retrieval_instances())
def test_norm_never_grows_and_signs_hold(case):
    columns, n_entities, x, p = case
    index = make_index(columns, n_entities)
    start = np.linalg.norm(x)
    for steps in range(7):
        x_t, p_t = diffuse(x, p, index, steps)
        assert np.linalg.norm(x_t) <= start * (1 + 1e-9) + 1e-12
        assert np.all(x_t >= 0)
        assert np.all(p_t >= 0)
