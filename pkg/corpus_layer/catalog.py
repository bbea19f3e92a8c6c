"""Entity catalog: the global entity set, each entity mapped to a dense row index."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from hyperretrieve.entities import EntitySet


@dataclass(frozen=True)
class EntityCatalog:
    """Bijection between normalized entity strings and indices 0..n-1."""

    entities: Tuple[str, ...] = ()
    _index: Dict[str, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {e: i for i, e in enumerate(self.entities)}
        if len(index) != len(self.entities):
            raise ValueError("EntityCatalog entries must be unique")
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.entities)

    def __contains__(self, entity: str) -> bool:
        return entity in self._index

    def index_of(self, entity: str) -> Optional[int]:
        return self._index.get(entity)

    def entity_of(self, index: int) -> str:
        return self.entities[index]

    def to_list(self) -> List[str]:
        return list(self.entities)

    @classmethod
    def from_list(cls, entities: Iterable[str]) -> "EntityCatalog":
        return cls(entities=tuple(entities))


def build_catalog(entity_sets: Sequence[EntitySet]) -> EntityCatalog:
    """First-seen index assignment over passages in ascending id, then extraction order."""
    seen: Dict[str, None] = {}
    for entity_set in sorted(entity_sets, key=lambda s: s.passage_id):
        for entity in entity_set.entities:
            if entity not in seen:
                seen[entity] = None
    return EntityCatalog(entities=tuple(seen))
