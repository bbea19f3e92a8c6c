"""Types for the entity-passage hypergraph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from corpus_layer.catalog import EntityCatalog


class IndexIntegrityError(RuntimeError):
    pass


@dataclass(frozen=True)
class IncidenceMatrix:
    """Binary entity x passage matrix H, kept in both compressed orientations.

    entity_major: |E| x |P| CSR (row i lists the passages containing entity i).
    passage_major: |P| x |E| CSR (row j lists the entities of passage j), i.e. H^T.
    All stored values are 1.0.
    """

    entity_major: csr_matrix
    passage_major: csr_matrix

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entity_major.shape

    @property
    def n_entities(self) -> int:
        return self.entity_major.shape[0]

    @property
    def n_passages(self) -> int:
        return self.entity_major.shape[1]

    @property
    def nnz(self) -> int:
        return int(self.entity_major.nnz)

    def passage_entities(self, column: int) -> np.ndarray:
        pm = self.passage_major
        return pm.indices[pm.indptr[column] : pm.indptr[column + 1]]

    def entity_passages(self, row: int) -> np.ndarray:
        em = self.entity_major
        return em.indices[em.indptr[row] : em.indptr[row + 1]]


@dataclass(frozen=True)
class DegreeVectors:
    """Integer node degrees d_i and hyperedge degrees delta_j, plus their float reciprocals.

    node_inv_sqrt = d^{-1/2} and edge_inv = delta^{-1}, both 0 where the degree is 0.
    """

    node_degrees: np.ndarray
    edge_degrees: np.ndarray
    node_inv_sqrt: np.ndarray = field(init=False, repr=False, compare=False)
    edge_inv: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        d = self.node_degrees.astype(np.float64)
        e = self.edge_degrees.astype(np.float64)
        node_inv_sqrt = np.zeros_like(d)
        np.sqrt(d, out=node_inv_sqrt, where=d > 0)
        np.divide(1.0, node_inv_sqrt, out=node_inv_sqrt, where=d > 0)
        edge_inv = np.zeros_like(e)
        np.divide(1.0, e, out=edge_inv, where=e > 0)
        object.__setattr__(self, "node_inv_sqrt", node_inv_sqrt)
        object.__setattr__(self, "edge_inv", edge_inv)


@dataclass(frozen=True)
class HypergraphIndex:
    """Catalog + incidence + degrees + passage ids; immutable once built or loaded.

    `manifest` carries counts, the corpus hash, the extractor id and the
    embedding cache reference ({"cache_dir", "encoder_id", "dim"}).
    """

    catalog: EntityCatalog
    incidence: IncidenceMatrix
    degrees: DegreeVectors
    passage_ids: Tuple[str, ...]
    manifest: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.incidence.n_passages != len(self.passage_ids):
            raise IndexIntegrityError(
                f"Incidence has {self.incidence.n_passages} columns for {len(self.passage_ids)} passage ids"
            )
        if self.incidence.n_entities != len(self.catalog):
            raise IndexIntegrityError(
                f"Incidence has {self.incidence.n_entities} rows for {len(self.catalog)} catalog entries"
            )

    @property
    def n_entities(self) -> int:
        return self.incidence.n_entities

    @property
    def n_passages(self) -> int:
        return self.incidence.n_passages


@dataclass(frozen=True)
class StatsReport:
    """Graph-scale summary: node/hyperedge counts, nnz and degree distributions."""

    n_nodes: int
    n_hyperedges: int
    nnz: int
    zero_degree_hyperedges: int
    mean_entities_per_passage: float
    mean_passages_per_entity: float
    max_node_degree: int
    max_edge_degree: int
    node_degree_histogram: Dict[int, int]
    edge_degree_histogram: Dict[int, int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_nodes": self.n_nodes,
            "n_hyperedges": self.n_hyperedges,
            "nnz": self.nnz,
            "zero_degree_hyperedges": self.zero_degree_hyperedges,
            "mean_entities_per_passage": self.mean_entities_per_passage,
            "mean_passages_per_entity": self.mean_passages_per_entity,
            "max_node_degree": self.max_node_degree,
            "max_edge_degree": self.max_edge_degree,
            "node_degree_histogram": {str(k): v for k, v in sorted(self.node_degree_histogram.items())},
            "edge_degree_histogram": {str(k): v for k, v in sorted(self.edge_degree_histogram.items())},
        }
