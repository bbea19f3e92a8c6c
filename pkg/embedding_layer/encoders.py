"""
Dense encoders and the cached `embed_batch` entry point.

  - HashingEncoder: offline, hashed bag-of-words (signed counts, L2-normalized).
  - RemoteEncoder: OpenAI-compatible /embeddings endpoint, batched.
"""

from __future__ import annotations

import hashlib
import re
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

import numpy as np

from hyperretrieve.clients import ClientError, OpenAICompatibleClient

from embedding_layer.cache import EmbeddingCache, content_key
from embedding_layer.types import EmbeddingMatrix

if TYPE_CHECKING:
    from output_layer.audit_trail import AuditTrail


DEFAULT_OFFLINE_DIM = 256
DEFAULT_BATCH_SIZE = 64
HASH_KEY = b"hyperretrieve-bow-v1"
_WORD_RE = re.compile(r"\w+")


class EmbeddingError(RuntimeError):
    def __init__(self, message: str, batch_offsets: Tuple[int, int]):
        super().__init__(f"{message} (batch offsets {batch_offsets[0]}..{batch_offsets[1]})")
        self.batch_offsets = batch_offsets


class Encoder(ABC):
    """Contract for dense encoders: texts in, one row per text out."""

    @property
    @abstractmethod
    def encoder_id(self) -> str:
        ...

    @property
    @abstractmethod
    def dim(self) -> int:
        ...

    @property
    def is_remote(self) -> bool:
        return False

    @abstractmethod
    def encode(self, texts: Sequence[str]) -> np.ndarray:
        """Return a (len(texts), dim) float array."""
        ...


class HashingEncoder(Encoder):
    """Offline encoder: each lowercase word token hashes to a bucket and a sign.

    Uses keyed BLAKE2b on UTF-8 bytes, so vectors are identical across processes
    and platforms. Texts without word tokens map to the zero vector.
    """

    def __init__(self, dim: int = DEFAULT_OFFLINE_DIM):
        if dim < 1:
            raise ValueError("dim must be positive")
        self._dim = dim

    @property
    def encoder_id(self) -> str:
        return f"hashing-bow-v1-{self._dim}"

    @property
    def dim(self) -> int:
        return self._dim

    def _bucket(self, token: str) -> Tuple[int, float]:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8, key=HASH_KEY).digest()
        h = int.from_bytes(digest, "little")
        return h % self._dim, (1.0 if (h >> 63) & 1 == 0 else -1.0)

    def encode_one(self, text: str) -> np.ndarray:
        vec = np.zeros(self._dim, dtype=np.float64)
        for token in _WORD_RE.findall((text or "").lower()):
            bucket, sign = self._bucket(token)
            vec[bucket] += sign
        norm = float(np.sqrt(np.dot(vec, vec)))
        if norm > 0.0:
            vec /= norm
        return vec

    def encode(self, texts: Sequence[str]) -> np.ndarray:
        if not texts:
            return np.zeros((0, self._dim), dtype=np.float64)
        return np.vstack([self.encode_one(t) for t in texts])


class RemoteEncoder(Encoder):
    """Embeddings from an OpenAI-compatible endpoint, `batch_size` texts per request."""

    def __init__(
        self,
        client: OpenAICompatibleClient,
        dim: int,
        batch_size: int = DEFAULT_BATCH_SIZE,
        max_workers: int = 4,
    ):
        self._client = client
        self._dim = dim
        self.batch_size = max(1, batch_size)
        self.max_workers = max(1, max_workers)

    @property
    def encoder_id(self) -> str:
        return f"remote:{self._client.client_id}"

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def is_remote(self) -> bool:
        return True

    def _encode_batch(self, start: int, texts: Sequence[str]) -> np.ndarray:
        end = start + len(texts)
        try:
            rows = self._client.embed(texts)
        except ClientError as e:
            raise EmbeddingError(str(e), (start, end)) from e
        out = np.asarray(rows, dtype=np.float64)
        if out.shape != (len(texts), self._dim):
            raise EmbeddingError(f"Endpoint returned shape {out.shape}, expected {(len(texts), self._dim)}", (start, end))
        return out

    def encode(self, texts: Sequence[str]) -> np.ndarray:
        if not texts:
            return np.zeros((0, self._dim), dtype=np.float64)
        starts = list(range(0, len(texts), self.batch_size))
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            parts = list(pool.map(lambda s: self._encode_batch(s, texts[s : s + self.batch_size]), starts))
        return np.vstack(parts)


def embed_batch(
    texts: Sequence[str],
    encoder: Encoder,
    cache: Optional[EmbeddingCache] = None,
    audit: Optional["AuditTrail"] = None,
) -> EmbeddingMatrix:
    """One float32 row per input text, in input order.

    Texts already in `cache` are not re-encoded; new rows are added to it (the
    caller decides when to `save`). Repeated texts are encoded once.
    """
    texts = list(texts)
    if not texts:
        return EmbeddingMatrix.empty(encoder.dim)
    if cache is None:
        cache = EmbeddingCache(None, encoder.encoder_id, encoder.dim)
    keys = [content_key(t) for t in texts]
    missing = cache.missing(keys)
    if missing:
        texts_by_key = dict(zip(keys, texts))
        unique: List[str] = list(dict.fromkeys(missing))
        vectors = encoder.encode([texts_by_key[k] for k in unique])
        cache.put_many(unique, vectors)
    if audit is not None:
        audit.record(
            "embedding_batch",
            level="debug",
            encoder=encoder.encoder_id,
            texts=len(texts),
            encoded=len(set(missing)),
        )
    return EmbeddingMatrix(values=cache.get_many(keys))
