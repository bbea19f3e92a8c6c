"""
Corpus loader: read passages from JSONL (one {id, title, text} object per line).

Everything downstream consumes `Passage` objects in ascending id order; column j of
the incidence matrix is the j-th passage returned here.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Set

from hyperretrieve.entities import Passage
from hyperretrieve.utils.io import JsonLinesError, iter_jsonl


class CorpusFormatError(ValueError):
    def __init__(self, path: Path, line_number: int, message: str):
        super().__init__(f"{path}:{line_number}: {message}")
        self.path = path
        self.line_number = line_number


class DuplicatePassageError(ValueError):
    pass


def _passage_from_row(path: Path, line_no: int, row: Any) -> Passage:
    if not isinstance(row, dict):
        raise CorpusFormatError(path, line_no, "expected a JSON object")
    pid = row.get("id")
    text = row.get("text")
    title = row.get("title", "")
    if not isinstance(pid, str) or not pid:
        raise CorpusFormatError(path, line_no, "missing or non-string 'id'")
    if not isinstance(text, str):
        raise CorpusFormatError(path, line_no, "missing or non-string 'text'")
    if not text.strip():
        raise CorpusFormatError(path, line_no, "'text' is empty")
    if title is None:
        title = ""
    if not isinstance(title, str):
        raise CorpusFormatError(path, line_no, "non-string 'title'")
    return Passage(id=pid, title=title, text=text)


def load_corpus(path: Path) -> List[Passage]:
    """Load and validate a corpus file; returns passages sorted by id.

    Raises FileNotFoundError for a missing file, CorpusFormatError (with the
    1-based line number) for a line that is not UTF-8 JSON or lacks a field,
    DuplicatePassageError for a repeated id.
    """
    path = Path(path)
    out: List[Passage] = []
    seen: Set[str] = set()
    try:
        for line_no, row in iter_jsonl(path):
            passage = _passage_from_row(path, line_no, row)
            if passage.id in seen:
                raise DuplicatePassageError(f"{path}:{line_no}: duplicate passage id {passage.id!r}")
            seen.add(passage.id)
            out.append(passage)
    except JsonLinesError as e:
        raise CorpusFormatError(path, e.line_number, e.reason) from e
    out.sort(key=lambda p: p.id)
    return out


def passages_by_id(passages: List[Passage]) -> Dict[str, Passage]:
    return {p.id: p for p in passages}
