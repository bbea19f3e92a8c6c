"""Run log: structured, append-only record of indexing, retrieval and evaluation steps."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List

LEVELS = ("debug", "info", "warning", "error")


@dataclass
class AuditTrail:
    """
    Append-only log of pipeline steps: cache hits and misses, remote retries,
    extraction fallbacks, index builds, retrieval diagnostics, evaluation errors.
    Safe to share between worker threads. Export as JSON Lines.
    """

    events: List[Dict[str, Any]] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def record(self, step_type: str, level: str = "info", **payload: Any) -> None:
        """Append one event with timestamp, step type and level."""
        if level not in LEVELS:
            raise ValueError(f"Unknown log level: {level!r}")
        event = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "step": step_type,
            "level": level,
            **payload,
        }
        with self._lock:
            self.events.append(event)

    def get_events(self) -> List[Dict[str, Any]]:
        """Return a copy of all events."""
        with self._lock:
            return [dict(e) for e in self.events]

    def warnings(self) -> List[Dict[str, Any]]:
        return [e for e in self.get_events() if e["level"] in ("warning", "error")]

    def to_json_lines(self) -> str:
        """One JSON object per line (JSON Lines format) for append-friendly logging."""
        return "\n".join(json.dumps(e, default=str) for e in self.get_events())

    def write(self, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = self.to_json_lines()
        with path.open("a", encoding="utf-8") as f:
            if text:
                f.write(text + "\n")

    def clear(self) -> None:
        with self._lock:
            self.events.clear()
