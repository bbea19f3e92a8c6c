"""Types for the retrieval engine."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from hyperretrieve.errors import ConfigError


@dataclass(frozen=True)
class RetrievalConfig:
    """Query-time hyperparameters and ablation switches.

    eta: entity similarity threshold (strict, x_i = v_i only when v_i > eta)
    beta: weight of the dense score in the semantic blend
    steps: number of diffusion steps t
    k1, k2: seed count and upper bound of the dynamic selection
    use_hypergraph: False ranks by dense passage similarity alone
    use_weight_matrix: False replaces W_p with the identity
    use_semantic_enhancement: False skips the dense blend (p~ = p^(t))
    use_structural_enhancement: False selects the fixed top-k2 list
    ranking_depth: minimum length of the returned ranking (for Recall@k reporting)
    """

    eta: float = 0.8
    beta: float = 0.5
    steps: int = 4
    k1: int = 5
    k2: int = 10
    use_hypergraph: bool = True
    use_weight_matrix: bool = True
    use_semantic_enhancement: bool = True
    use_structural_enhancement: bool = True
    ranking_depth: int = 10

    def validate(self) -> "RetrievalConfig":
        if not 0.0 <= self.eta <= 1.0:
            raise ConfigError(f"eta must be in [0, 1], got {self.eta}")
        if not 0.0 <= self.beta <= 1.0:
            raise ConfigError(f"beta must be in [0, 1], got {self.beta}")
        if int(self.steps) != self.steps or self.steps < 0:
            raise ConfigError(f"steps must be a non-negative integer, got {self.steps}")
        if self.k1 < 1 or self.k2 < self.k1:
            raise ConfigError(f"need 1 <= k1 <= k2, got k1={self.k1}, k2={self.k2}")
        if self.ranking_depth < 1:
            raise ConfigError("ranking_depth must be positive")
        return self

    def updated(self, **changes: Any) -> "RetrievalConfig":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class QueryArtifacts:
    """Per-query vectors: entity similarity x, passage similarity p, and what the pipeline derives."""

    x: np.ndarray
    p: np.ndarray
    query_entities: Tuple[str, ...] = ()
    x_t: Optional[np.ndarray] = None
    p_t: Optional[np.ndarray] = None
    p_tilde: Optional[np.ndarray] = None
    warnings: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class RankedResult:
    """Ranking (column, score) by descending score, ties by ascending column, plus the selected set."""

    query: str
    ranking: Tuple[Tuple[int, float], ...]
    selected: Tuple[Tuple[int, float], ...]
    k2: int
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def selected_columns(self) -> List[int]:
        return [j for j, _ in self.selected]

    @property
    def ranked_columns(self) -> List[int]:
        return [j for j, _ in self.ranking]

    def selected_ids(self, passage_ids: Sequence[str]) -> List[str]:
        return [passage_ids[j] for j, _ in self.selected]

    def ranked_ids(self, passage_ids: Sequence[str]) -> List[str]:
        return [passage_ids[j] for j, _ in self.ranking]

    def to_dict(self, passage_ids: Sequence[str]) -> Dict[str, Any]:
        return {
            "query": self.query,
            "selected": [{"id": passage_ids[j], "score": s} for j, s in self.selected],
            "topk2": [{"id": passage_ids[j], "score": s} for j, s in self.ranking[: self.k2]],
            "diagnostics": dict(self.diagnostics),
        }
