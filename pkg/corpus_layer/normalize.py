"""Entity canonicalization: decides when two mentions are the same hypergraph node."""

from __future__ import annotations

import unicodedata
from typing import Iterable, List, Optional, Tuple


def normalize_entity(raw: str) -> Optional[str]:
    """NFC, lowercase, collapse internal whitespace, strip.

    Returns None when nothing is left; callers drop the entity.
    """
    if not raw:
        return None
    text = unicodedata.normalize("NFC", raw)
    text = unicodedata.normalize("NFC", text.lower())
    text = " ".join(text.split())
    return text or None


def normalize_entities(raws: Iterable[str]) -> Tuple[str, ...]:
    """Normalize, drop empties and de-duplicate, keeping first-seen order."""
    out: List[str] = []
    seen = set()
    for raw in raws:
        if not isinstance(raw, str):
            continue
        norm = normalize_entity(raw)
        if norm is None or norm in seen:
            continue
        seen.add(norm)
        out.append(norm)
    return tuple(out)
