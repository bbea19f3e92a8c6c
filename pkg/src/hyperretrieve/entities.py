from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Tuple


@dataclass(frozen=True)
class Passage:
    """One corpus unit. Passages are the hyperedges of the entity hypergraph.

    `id` is stable across corpus versions; `title` may be empty; `text` is never
    empty after trimming (the loader rejects such lines).
    """

    id: str
    title: str
    text: str

    def embedding_text(self) -> str:
        """Text fed to the dense encoder for this passage."""
        if self.title:
            return f"{self.title}\n{self.text}"
        return self.text

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class EntitySet:
    """Normalized, de-duplicated entities extracted from one passage (or a query)."""

    passage_id: str
    entities: Tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.entities)

    def to_dict(self) -> Dict[str, Any]:
        return {"passage_id": self.passage_id, "entities": list(self.entities)}


@dataclass(frozen=True)
class QAExample:
    """A question with its gold answers and supporting passage ids."""

    question: str
    gold_answers: List[str]
    gold_passage_ids: List[str] = field(default_factory=list)
    example_id: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
