"""Build the entity-passage incidence matrix H and its degree vectors."""

from __future__ import annotations

from typing import List, Sequence

import numpy as np
from scipy.sparse import csr_matrix

from hyperretrieve.entities import EntitySet

from corpus_layer.catalog import EntityCatalog
from hypergraph.types import DegreeVectors, IncidenceMatrix


class CatalogConsistencyError(RuntimeError):
    pass


def incidence_from_columns(columns: Sequence[Sequence[int]], n_entities: int) -> IncidenceMatrix:
    """H from per-passage entity row lists (column j = passage j). Repeated rows collapse to one entry."""
    indptr = np.zeros(len(columns) + 1, dtype=np.int64)
    rows: List[np.ndarray] = []
    for j, col in enumerate(columns):
        unique = np.unique(np.asarray(col, dtype=np.int32))
        if unique.size and (unique[0] < 0 or unique[-1] >= n_entities):
            raise CatalogConsistencyError(f"Passage column {j} references an entity outside 0..{n_entities - 1}")
        rows.append(unique)
        indptr[j + 1] = indptr[j] + unique.size
    indices = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int32)
    data = np.ones(indices.size, dtype=np.float64)
    passage_major = csr_matrix(
        (data, indices.astype(np.int32), indptr.astype(np.int32)),
        shape=(len(columns), n_entities),
    )
    entity_major = passage_major.transpose().tocsr()
    entity_major.sort_indices()
    return IncidenceMatrix(entity_major=entity_major, passage_major=passage_major)


def build_incidence(entity_sets: Sequence[EntitySet], catalog: EntityCatalog) -> IncidenceMatrix:
    """H[i, j] = 1 iff catalog entity i is in the j-th entity set.

    Column order follows `entity_sets`. An empty set gives an all-zero column.
    """
    columns: List[List[int]] = []
    for entity_set in entity_sets:
        col: List[int] = []
        for entity in entity_set.entities:
            idx = catalog.index_of(entity)
            if idx is None:
                raise CatalogConsistencyError(
                    f"Entity {entity!r} of passage {entity_set.passage_id!r} is not in the catalog"
                )
            col.append(idx)
        columns.append(col)
    return incidence_from_columns(columns, len(catalog))


def compute_degrees(incidence: IncidenceMatrix) -> DegreeVectors:
    """Row sums (entity degrees) and column sums (passage degrees) as integers."""
    node_degrees = np.diff(incidence.entity_major.indptr).astype(np.int32)
    edge_degrees = np.diff(incidence.passage_major.indptr).astype(np.int32)
    return DegreeVectors(node_degrees=node_degrees, edge_degrees=edge_degrees)
