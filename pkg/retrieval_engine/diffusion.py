"""Hypergraph diffusion: x^(t) = L~^t x, then p^(t) = W_p H^T x^(t)."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from hyperretrieve.errors import DimensionMismatchError

from hypergraph import HypergraphIndex, apply_diffusion_operator, gather_to_passages


def edge_weights(p: np.ndarray, use_weight_matrix: bool) -> np.ndarray:
    """Diagonal of W_p: passage cosines clamped to [0, 1], or all ones when disabled."""
    p = np.asarray(p, dtype=np.float64)
    if not use_weight_matrix:
        return np.ones_like(p)
    return np.clip(p, 0.0, 1.0)


def diffuse(
    x: np.ndarray,
    p: np.ndarray,
    index: HypergraphIndex,
    steps: int,
    use_weight_matrix: bool = True,
) -> Tuple[np.ndarray, np.ndarray]:
    """Run `steps` operator applications (no renormalization) and project onto passages."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.shape[0] != index.n_passages:
        raise DimensionMismatchError(f"p has shape {p.shape}, expected ({index.n_passages},)")
    w = edge_weights(p, use_weight_matrix)
    x_t = np.asarray(x, dtype=np.float64)
    if x_t.ndim != 1 or x_t.shape[0] != index.n_entities:
        raise DimensionMismatchError(f"x has shape {x_t.shape}, expected ({index.n_entities},)")
    for _ in range(steps):
        x_t = apply_diffusion_operator(x_t, index.incidence, index.degrees, w)
    p_t = w * gather_to_passages(x_t, index.incidence)
    return x_t, p_t
