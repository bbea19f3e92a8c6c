"""Evaluation dataset loader: JSONL {question, answers, gold_passage_ids[, id]}."""

from __future__ import annotations

from pathlib import Path
from typing import Any, List

from hyperretrieve.entities import QAExample
from hyperretrieve.utils.io import JsonLinesError, iter_jsonl


class DatasetFormatError(ValueError):
    def __init__(self, path: Path, line_number: int, message: str):
        super().__init__(f"{path}:{line_number}: {message}")
        self.path = path
        self.line_number = line_number


def _str_list(value: Any) -> bool:
    return isinstance(value, list) and all(isinstance(v, str) for v in value)


def load_dataset(path: Path) -> List[QAExample]:
    """Load questions in file order. Examples without an id get `q<line>`."""
    path = Path(path)
    out: List[QAExample] = []
    try:
        rows = list(iter_jsonl(path))
    except JsonLinesError as e:
        raise DatasetFormatError(path, e.line_number, e.reason) from e
    for line_no, row in rows:
        if not isinstance(row, dict):
            raise DatasetFormatError(path, line_no, "expected a JSON object")
        question = row.get("question")
        answers = row.get("answers")
        gold = row.get("gold_passage_ids", [])
        if not isinstance(question, str) or not question.strip():
            raise DatasetFormatError(path, line_no, "missing or empty 'question'")
        if not _str_list(answers) or not answers:
            raise DatasetFormatError(path, line_no, "'answers' must be a non-empty list of strings")
        if not _str_list(gold):
            raise DatasetFormatError(path, line_no, "'gold_passage_ids' must be a list of strings")
        example_id = row.get("id") or f"q{line_no}"
        out.append(
            QAExample(
                question=question,
                gold_answers=list(answers),
                gold_passage_ids=list(gold),
                example_id=str(example_id),
            )
        )
    return out
