"""Entity hypergraph: incidence matrix, degrees, diffusion operator, on-disk index."""

from hypergraph.incidence import CatalogConsistencyError, build_incidence, compute_degrees, incidence_from_columns
from hypergraph.operator import DimensionMismatchError, apply_diffusion_operator, gather_to_passages
from hypergraph.stats import format_stats_cli, graph_stats
from hypergraph.store import index_exists, load_index, save_index
from hypergraph.types import DegreeVectors, HypergraphIndex, IncidenceMatrix, IndexIntegrityError, StatsReport

__all__ = [
    "CatalogConsistencyError",
    "DegreeVectors",
    "DimensionMismatchError",
    "HypergraphIndex",
    "IncidenceMatrix",
    "IndexIntegrityError",
    "StatsReport",
    "apply_diffusion_operator",
    "build_incidence",
    "compute_degrees",
    "format_stats_cli",
    "gather_to_passages",
    "graph_stats",
    "incidence_from_columns",
    "index_exists",
    "load_index",
    "save_index",
]
