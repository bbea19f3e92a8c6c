"""Types for the embedding layer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Row-major embeddings; `row_keys[r]` identifies row r (entity index, passage column, or text)."""

    values: np.ndarray
    row_keys: Tuple = ()

    def __post_init__(self) -> None:
        if self.values.ndim != 2:
            raise ValueError(f"EmbeddingMatrix values must be 2-D, got shape {self.values.shape}")
        if self.row_keys and len(self.row_keys) != self.values.shape[0]:
            raise ValueError("row_keys length does not match the row count")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("EmbeddingMatrix contains non-finite entries")

    @property
    def rows(self) -> int:
        return int(self.values.shape[0])

    @property
    def dim(self) -> int:
        return int(self.values.shape[1])

    def with_keys(self, keys: Sequence) -> "EmbeddingMatrix":
        return EmbeddingMatrix(values=self.values, row_keys=tuple(keys))

    @classmethod
    def empty(cls, dim: int) -> "EmbeddingMatrix":
        return cls(values=np.zeros((0, dim), dtype=np.float32))
