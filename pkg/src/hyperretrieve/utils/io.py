from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, Tuple

import numpy as np


def ensure_parent(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)


def write_text_atomic(path: Path, text: str) -> None:
    """Write via a sibling temp file and `os.replace` so readers never see a partial file."""
    ensure_parent(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def write_json(path: Path, obj: Any) -> None:
    write_text_atomic(path, json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def read_json(path: Path) -> Any:
    return json.loads(path.read_text(encoding="utf-8"))


class JsonLinesError(ValueError):
    """A line that is not UTF-8 or not JSON; callers attach the file path."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


def iter_jsonl(path: Path) -> Iterator[Tuple[int, Any]]:
    """Yield (1-based line number, parsed object) for every non-blank line.

    Lines are decoded one at a time so a bad byte is reported with its line number.
    """
    with Path(path).open("rb") as f:
        for line_no, raw in enumerate(f, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise JsonLinesError(line_no, "invalid UTF-8") from e
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as e:
                raise JsonLinesError(line_no, f"invalid JSON ({e.msg})") from e
            yield line_no, row


def write_jsonl(path: Path, rows: Iterable[Dict[str, Any]]) -> None:
    lines = [json.dumps(row, ensure_ascii=False) for row in rows]
    write_text_atomic(path, "".join(line + "\n" for line in lines))


def write_array(path: Path, values: np.ndarray, dtype: str) -> None:
    """Persist a 1-D array as flat little-endian binary (`dtype` like '<i4' or '<f4')."""
    ensure_parent(path)
    tmp = path.with_name(path.name + ".tmp")
    np.ascontiguousarray(values, dtype=np.dtype(dtype)).tofile(tmp)
    os.replace(tmp, path)


def read_array(path: Path, dtype: str) -> np.ndarray:
    return np.fromfile(path, dtype=np.dtype(dtype))


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
