"""
Content-hash-keyed embedding cache.

Directory layout:
  manifest.json   {"encoder_id", "dim", "keys": [sha256 of each text, in row order]}
  vectors.f32     rows * dim little-endian float32 values, appended as rows arrive
Opening a cache written by another encoder id or dim discards it.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from hyperretrieve.utils.io import read_json, sha256_text, write_json

FLOAT32 = "<f4"


def content_key(text: str) -> str:
    return sha256_text(text)


class EmbeddingCache:
    """In-memory map key -> row, persisted to `directory` when one is given."""

    def __init__(self, directory: Optional[Path], encoder_id: str, dim: int):
        self.directory = Path(directory) if directory else None
        self.encoder_id = encoder_id
        self.dim = dim
        self._rows: Dict[str, int] = {}
        self._keys: List[str] = []
        self._buffer = np.zeros((0, dim), dtype=np.float32)
        self._persisted = 0
        self._truncate_on_save = False
        self._lock = threading.Lock()
        self.invalidated = False
        if self.directory is not None:
            self._load()

    @property
    def manifest_path(self) -> Optional[Path]:
        return self.directory / "manifest.json" if self.directory else None

    @property
    def vectors_path(self) -> Optional[Path]:
        return self.directory / "vectors.f32" if self.directory else None

    def _load(self) -> None:
        if not self.manifest_path.exists():
            self._truncate_on_save = True
            return
        manifest = read_json(self.manifest_path)
        if manifest.get("encoder_id") != self.encoder_id or manifest.get("dim") != self.dim:
            self.invalidated = True
            self._truncate_on_save = True
            return
        keys = list(manifest.get("keys") or [])
        expected = len(keys) * self.dim
        flat = np.fromfile(self.vectors_path, dtype=np.dtype(FLOAT32)) if self.vectors_path.exists() else np.zeros(0, dtype=np.float32)
        if flat.size < expected:
            # Vectors file lost rows the manifest promises; start over.
            self.invalidated = True
            self._truncate_on_save = True
            return
        if flat.size > expected:
            self._truncate_on_save = True
        matrix = flat[:expected].reshape(len(keys), self.dim).astype(np.float32)
        self._keys = keys
        self._rows = {k: i for i, k in enumerate(keys)}
        self._buffer = matrix
        self._persisted = len(keys)

    def __len__(self) -> int:
        return len(self._keys)

    def __contains__(self, key: str) -> bool:
        return key in self._rows

    def _all_rows(self) -> np.ndarray:
        return self._buffer[: len(self._keys)]

    def _reserve(self, n_rows: int) -> None:
        # Capacity doubles so a run of small puts costs amortized O(rows).
        capacity = self._buffer.shape[0]
        if n_rows <= capacity:
            return
        grown = np.zeros((max(n_rows, 2 * capacity, 16), self.dim), dtype=np.float32)
        grown[: len(self._keys)] = self._all_rows()
        self._buffer = grown

    def missing(self, keys: Sequence[str]) -> List[str]:
        with self._lock:
            return [k for k in keys if k not in self._rows]

    def put_many(self, keys: Sequence[str], vectors: np.ndarray) -> None:
        vectors = np.asarray(vectors, dtype=np.float32)
        if vectors.shape != (len(keys), self.dim):
            raise ValueError(f"Expected vectors of shape {(len(keys), self.dim)}, got {vectors.shape}")
        with self._lock:
            fresh: Dict[str, int] = {}
            for i, key in enumerate(keys):
                if key not in self._rows and key not in fresh:
                    fresh[key] = i
            if not fresh:
                return
            start = len(self._keys)
            self._reserve(start + len(fresh))
            self._buffer[start : start + len(fresh)] = vectors[list(fresh.values())]
            for key in fresh:
                self._rows[key] = len(self._keys)
                self._keys.append(key)

    def get_many(self, keys: Sequence[str]) -> np.ndarray:
        """Rows for `keys` in order. Raises KeyError for an unknown key."""
        with self._lock:
            matrix = self._all_rows()
            idx = [self._rows[k] for k in keys]
            return matrix[idx] if idx else np.zeros((0, self.dim), dtype=np.float32)

    def save(self) -> None:
        """Append rows added since the last save, then rewrite the manifest."""
        if self.directory is None:
            return
        with self._lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            matrix = self._all_rows()
            if self._truncate_on_save:
                tmp = self.vectors_path.with_name(self.vectors_path.name + ".tmp")
                matrix.astype(np.dtype(FLOAT32)).tofile(tmp)
                os.replace(tmp, self.vectors_path)
                self._truncate_on_save = False
            elif matrix.shape[0] > self._persisted:
                with self.vectors_path.open("ab") as f:
                    f.write(matrix[self._persisted :].astype(np.dtype(FLOAT32)).tobytes())
            self._persisted = matrix.shape[0]
            write_json(
                self.manifest_path,
                {"encoder_id": self.encoder_id, "dim": self.dim, "keys": list(self._keys)},
            )
