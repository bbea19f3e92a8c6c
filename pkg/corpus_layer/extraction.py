"""
Entity extraction over a corpus, with a resumable JSONL cache.

Cache format: one {"passage_id", "text_sha256", "entities"} object per line, rewritten
atomically. A warm cache means zero extractor calls.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from hyperretrieve.clients import ClientError
from hyperretrieve.entities import EntitySet, Passage
from hyperretrieve.utils.io import iter_jsonl, sha256_text, write_jsonl

from corpus_layer.extractors import EntityExtractor
from corpus_layer.normalize import normalize_entities

if TYPE_CHECKING:
    from output_layer.audit_trail import AuditTrail


QUERY_ENTITY_SET_ID = "<query>"


class ExtractionError(RuntimeError):
    def __init__(self, passage_id: str, message: str):
        super().__init__(f"Entity extraction failed for passage {passage_id!r}: {message}")
        self.passage_id = passage_id


class ExtractionCache:
    """passage_id -> (text hash, normalized entity tuple), backed by a JSONL file.

    An entry only answers for the text it was extracted from; a passage whose text
    changed is a miss.
    """

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path else None
        self._entries: Dict[str, Tuple[str, Tuple[str, ...]]] = {}
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            for _, row in iter_jsonl(self.path):
                self._entries[str(row["passage_id"])] = (
                    str(row.get("text_sha256") or ""),
                    normalize_entities(row.get("entities") or []),
                )

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, passage_id: str) -> bool:
        return passage_id in self._entries

    def get(self, passage: Passage) -> Optional[EntitySet]:
        entry = self._entries.get(passage.id)
        if entry is None or entry[0] != sha256_text(passage.text):
            return None
        return EntitySet(passage_id=passage.id, entities=entry[1])

    def put(self, entity_set: EntitySet, text: str) -> None:
        with self._lock:
            self._entries[entity_set.passage_id] = (sha256_text(text), tuple(entity_set.entities))

    def save(self) -> None:
        if self.path is None:
            return
        with self._lock:
            rows = [
                {"passage_id": pid, "text_sha256": self._entries[pid][0], "entities": list(self._entries[pid][1])}
                for pid in sorted(self._entries)
            ]
        write_jsonl(self.path, rows)


def extract_entities(
    passage: Passage,
    extractor: EntityExtractor,
    cache: Optional[ExtractionCache] = None,
    audit: Optional["AuditTrail"] = None,
) -> EntitySet:
    """Extract, normalize and de-duplicate the entities of one passage.

    Cached passages (same id and text) are returned without calling the extractor. An empty
    extraction is a valid result.
    """
    if cache is not None:
        cached = cache.get(passage)
        if cached is not None:
            return cached
    try:
        raw = extractor.extract(passage.text)
    except ClientError as e:
        if audit is not None:
            audit.record("extraction_failed", level="error", passage_id=passage.id, error=str(e))
        raise ExtractionError(passage.id, str(e)) from e
    entity_set = EntitySet(passage_id=passage.id, entities=normalize_entities(raw))
    if cache is not None:
        cache.put(entity_set, passage.text)
    return entity_set


def extract_corpus(
    passages: Sequence[Passage],
    extractor: EntityExtractor,
    cache: Optional[ExtractionCache] = None,
    max_workers: int = 4,
    audit: Optional["AuditTrail"] = None,
) -> List[EntitySet]:
    """Extract every passage (cache first, then at most `max_workers` requests in flight).

    Returns entity sets aligned with `passages`. The cache is saved even when a
    passage fails, so a rerun resumes where this one stopped.
    """
    cache = cache if cache is not None else ExtractionCache()
    missing = [p for p in passages if cache.get(p) is None]
    if audit is not None:
        audit.record(
            "extraction_started",
            extractor=extractor.extractor_id,
            passages=len(passages),
            cache_hits=len(passages) - len(missing),
        )
    try:
        if missing:
            with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
                for _ in pool.map(lambda p: extract_entities(p, extractor, cache, audit), missing):
                    pass
    finally:
        if missing:
            cache.save()
    return [cache.get(p) or EntitySet(passage_id=p.id) for p in passages]


def extract_query_entities(query: str, extractor: EntityExtractor) -> EntitySet:
    """Query-side extraction with the same extractor and normalization as indexing.

    Raises ClientError on remote failure; the retrieval engine decides how to degrade.
    """
    return EntitySet(passage_id=QUERY_ENTITY_SET_ID, entities=normalize_entities(extractor.extract(query)))
