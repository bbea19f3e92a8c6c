"""
Synthetic corpora with a requested scale: passage count, entity count and mean
entities per passage. Used for the performance smoke and desk-scale runs.

Entity surface forms are single capitalized tokens ("Entity42"), so the offline
extractor recovers exactly the pinned entity sets from the passage text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Set

import numpy as np

from hyperretrieve.entities import EntitySet, Passage


def entity_name(i: int) -> str:
    return f"Entity{i}"


@dataclass(frozen=True)
class SyntheticCorpus:
    passages: List[Passage]
    entity_sets: List[EntitySet]
    n_entities: int

    @property
    def nnz(self) -> int:
        return sum(len(s) for s in self.entity_sets)


def generate_corpus(
    n_passages: int,
    n_entities: int,
    mean_entities_per_passage: float,
    seed: int = 0,
) -> SyntheticCorpus:
    """Every entity appears in at least one passage; the remaining memberships
    are drawn uniformly until the total reaches round(n_passages * mean).
    """
    if n_passages < 1 or n_entities < 1:
        raise ValueError("need at least one passage and one entity")
    total = int(round(n_passages * mean_entities_per_passage))
    if total < n_entities:
        raise ValueError(
            f"mean {mean_entities_per_passage} over {n_passages} passages cannot cover {n_entities} entities"
        )
    if total > n_passages * n_entities:
        raise ValueError("mean entities per passage exceeds the entity count")
    rng = np.random.default_rng(seed)
    members: List[Set[int]] = [set() for _ in range(n_passages)]
    order: List[List[int]] = [[] for _ in range(n_passages)]

    def _add(j: int, e: int) -> bool:
        if e in members[j]:
            return False
        members[j].add(e)
        order[j].append(e)
        return True

    for slot, e in enumerate(rng.permutation(n_entities)):
        _add(slot % n_passages, int(e))
    remaining = total - n_entities
    while remaining > 0:
        js = rng.integers(0, n_passages, size=remaining)
        es = rng.integers(0, n_entities, size=remaining)
        remaining -= sum(_add(int(j), int(e)) for j, e in zip(js, es))

    width = len(str(n_passages - 1))
    passages: List[Passage] = []
    entity_sets: List[EntitySet] = []
    for j in range(n_passages):
        pid = f"s{j:0{width}d}"
        names = [entity_name(e) for e in order[j]]
        passages.append(Passage(id=pid, title="", text=f"synthetic passage {j} mentions {', '.join(names)}."))
        entity_sets.append(EntitySet(passage_id=pid, entities=tuple(n.lower() for n in names)))
    return SyntheticCorpus(passages=passages, entity_sets=entity_sets, n_entities=n_entities)


def generate_queries(corpus: SyntheticCorpus, n_queries: int, seed: int = 0) -> List[str]:
    """Two-entity questions drawn from the corpus's own passages."""
    rng = np.random.default_rng(seed)
    out: List[str] = []
    for j in rng.integers(0, len(corpus.passages), size=n_queries):
        entities = corpus.entity_sets[int(j)].entities
        picks = [entities[int(i)] for i in rng.choice(len(entities), size=min(2, len(entities)), replace=False)]
        names = " and ".join(p.capitalize() for p in picks)
        out.append(f"which passage links {names}?")
    return out
