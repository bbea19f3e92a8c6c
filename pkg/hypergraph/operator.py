"""
Passage-weighted hypergraph diffusion operator.

    L~ x = D_v^{-1/2} H W_p D_e^{-1} H^T D_v^{-1/2} x

applied as sparse stages, never materialized. Zero-degree hyperedges get
delta^{-1} = 0 and so contribute nothing.
"""

from __future__ import annotations

import numpy as np

from hyperretrieve.errors import DimensionMismatchError

from hypergraph.types import DegreeVectors, IncidenceMatrix


def _check_vector(name: str, v: np.ndarray, expected: int) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != expected:
        raise DimensionMismatchError(f"{name} has shape {arr.shape}, expected ({expected},)")
    return arr


def gather_to_passages(x: np.ndarray, incidence: IncidenceMatrix) -> np.ndarray:
    """H^T x: for each passage, the sum of its entities' values."""
    x = _check_vector("x", x, incidence.n_entities)
    return incidence.passage_major @ x


def apply_diffusion_operator(
    x: np.ndarray,
    incidence: IncidenceMatrix,
    degrees: DegreeVectors,
    edge_weights: np.ndarray,
) -> np.ndarray:
    """One application of L~ to an entity vector.

    `edge_weights` are the diagonal of W_p, expected in [0, 1] (the caller clamps).
    """
    x = _check_vector("x", x, incidence.n_entities)
    w = _check_vector("edge_weights", edge_weights, incidence.n_passages)
    if degrees.node_degrees.shape[0] != incidence.n_entities or degrees.edge_degrees.shape[0] != incidence.n_passages:
        raise DimensionMismatchError("Degree vectors do not match the incidence shape")

    y = x * degrees.node_inv_sqrt
    z = incidence.passage_major @ y
    z *= w * degrees.edge_inv
    u = incidence.entity_major @ z
    return u * degrees.node_inv_sqrt
