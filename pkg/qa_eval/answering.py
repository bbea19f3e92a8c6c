"""Answer generation: build a retrieval-augmented prompt and ask the chat client."""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Sequence

from hyperretrieve.clients import ChatClient
from hyperretrieve.entities import Passage

QA_INSTRUCTION = (
    "You are a careful reading-comprehension assistant. Answer the question using the "
    "passages when they are given. Reply with a short answer only (an entity, a date, a "
    "number or a short phrase), with no explanation."
)


def load_instruction(path: Optional[Path]) -> str:
    """Instruction override from a text file; the built-in instruction when path is None."""
    if path is None:
        return QA_INSTRUCTION
    text = Path(path).read_text(encoding="utf-8").strip()
    return text or QA_INSTRUCTION


def format_passages(passages: Sequence[Passage]) -> str:
    blocks = []
    for rank, passage in enumerate(passages, start=1):
        title = passage.title or passage.id
        blocks.append(f"[{rank}] Title: {title}\n{passage.text}")
    return "\n\n".join(blocks)


def build_prompt(query: str, passages: Sequence[Passage], instruction: str = QA_INSTRUCTION) -> List[Dict[str, str]]:
    """Chat messages for one question. No passages gives the closed-book prompt."""
    parts = []
    if passages:
        parts.append(format_passages(passages))
        parts.append("")
    parts.append(f"Question: {query.strip()}")
    parts.append("Answer:")
    return [
        {"role": "system", "content": instruction},
        {"role": "user", "content": "\n".join(parts)},
    ]


def answer(
    query: str,
    passages: Sequence[Passage],
    llm: ChatClient,
    instruction: str = QA_INSTRUCTION,
) -> str:
    """Ask `llm` to answer `query` from `passages` (rank order). Client errors propagate."""
    return llm.chat(build_prompt(query, passages, instruction)).strip()
