"""Hypothesis strategies for random hypergraphs and query vectors."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

unit_floats = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)
cosines = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def hypergraphs(draw, max_entities: int = 50, max_passages: int = 20):
    """(columns, n_entities): random entity lists per passage; empty columns allowed."""
    n_entities = draw(st.integers(min_value=1, max_value=max_entities))
    n_passages = draw(st.integers(min_value=1, max_value=max_passages))
    columns = [
        draw(st.lists(st.integers(0, n_entities - 1), max_size=min(n_entities, 8), unique=True))
        for _ in range(n_passages)
    ]
    return columns, n_entities


@st.composite
def retrieval_instances(draw, max_entities: int = 50, max_passages: int = 20):
    """(columns, n_entities, x, p): x nonnegative over entities, p raw cosines over passages."""
    columns, n_entities = draw(hypergraphs(max_entities, max_passages))
    x = np.array(draw(st.lists(unit_floats, min_size=n_entities, max_size=n_entities)))
    p = np.array(draw(st.lists(cosines, min_size=len(columns), max_size=len(columns))))
    return columns, n_entities, x, p
