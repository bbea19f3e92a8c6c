"""
Entity extractors: turn raw passage (or query) text into candidate entity strings.

Two implementations share one contract:
  - LLMEntityExtractor: one-shot prompting over an OpenAI-compatible chat endpoint.
  - CapitalizedSpanExtractor: offline fallback, contiguous capitalized-token spans.
Normalization and de-duplication happen in corpus_layer.extraction, not here.
"""

from __future__ import annotations

import json
import re
from abc import ABC, abstractmethod
from pathlib import Path
from typing import TYPE_CHECKING, Dict, List, Optional

from hyperretrieve.clients import ChatClient

if TYPE_CHECKING:
    from output_layer.audit_trail import AuditTrail


DEFAULT_PROMPT_PATH = Path(__file__).resolve().parent / "prompts" / "entity_extraction.txt"
PASSAGE_PLACEHOLDER = "{passage}"
_ROLE_MARKER = re.compile(r"^\[(system|user|assistant)\]\s*$")

TOKEN_RE = re.compile(r"\w+(?:['’\-]\w+)*|[^\w\s]")

# Spans starting with one of these are dropped (sentence starters, pronouns, question words).
STOPWORDS = frozenset(
    """
    a an the this that these those there here it its he she they we i you his her their our
    my your him them us me in on at of for to from by with as and or but if so then when
    where what which who whom whose why how is are was were be been do does did has have
    had can could will would should may might must not no yes after before during while
    since until also however although though because both either neither each every all
    some any many most other such only one
    """.split()
)


class EntityExtractor(ABC):
    """Contract for entity extractors. Input: text. Output: raw entity strings."""

    @property
    @abstractmethod
    def extractor_id(self) -> str:
        """Short identifier recorded in the index manifest."""
        ...

    @abstractmethod
    def extract(self, text: str) -> List[str]:
        """Return raw (un-normalized) entity mentions in output order."""
        ...


class CapitalizedSpanExtractor(EntityExtractor):
    """Offline extractor: maximal runs of capitalized word tokens.

    Punctuation tokens break a run. Runs whose first token is a stopword are
    dropped whole, which removes sentence-initial "The", "In", "Where" etc.
    """

    @property
    def extractor_id(self) -> str:
        return "capitalized-spans-v1"

    def extract(self, text: str) -> List[str]:
        spans: List[str] = []
        current: List[str] = []

        def flush() -> None:
            if current and current[0].lower() not in STOPWORDS:
                spans.append(" ".join(current))
            current.clear()

        for token in TOKEN_RE.findall(text or ""):
            if token[0].isalpha() and token[0].isupper():
                current.append(token)
            else:
                flush()
        flush()
        return spans


def parse_prompt_template(template: str) -> List[Dict[str, str]]:
    """Split a `[system]` / `[user]` / `[assistant]` marked template into chat messages."""
    messages: List[Dict[str, str]] = []
    role: Optional[str] = None
    lines: List[str] = []
    for line in template.splitlines():
        m = _ROLE_MARKER.match(line)
        if m:
            if role is not None:
                messages.append({"role": role, "content": "\n".join(lines).strip()})
            role, lines = m.group(1), []
        else:
            lines.append(line)
    if role is not None:
        messages.append({"role": role, "content": "\n".join(lines).strip()})
    if not messages or PASSAGE_PLACEHOLDER not in messages[-1]["content"]:
        raise ValueError("Extraction prompt template must end with a message containing {passage}")
    return messages


def parse_entity_response(content: str) -> Optional[List[str]]:
    """Pull the entity list out of a model reply; None when the reply is unusable."""
    content = (content or "").strip()
    candidates = [content]
    start, end = content.find("{"), content.rfind("}")
    if 0 <= start < end:
        candidates.append(content[start : end + 1])
    start, end = content.find("["), content.rfind("]")
    if 0 <= start < end:
        candidates.append(content[start : end + 1])
    for candidate in candidates:
        try:
            data = json.loads(candidate)
        except json.JSONDecodeError:
            continue
        if isinstance(data, dict):
            data = data.get("named_entities", data.get("entities"))
        if isinstance(data, list):
            return [str(e) for e in data if isinstance(e, (str, int, float))]
    return None


class LLMEntityExtractor(EntityExtractor):
    """One-shot LLM extraction. Remote failures surface as ClientError to the caller."""

    def __init__(
        self,
        client: ChatClient,
        template: Optional[str] = None,
        audit: Optional["AuditTrail"] = None,
    ):
        self._client = client
        self._messages = parse_prompt_template(
            template if template is not None else DEFAULT_PROMPT_PATH.read_text(encoding="utf-8")
        )
        self._audit = audit

    @classmethod
    def from_template_file(
        cls, client: ChatClient, path: Path, audit: Optional["AuditTrail"] = None
    ) -> "LLMEntityExtractor":
        return cls(client, template=Path(path).read_text(encoding="utf-8"), audit=audit)

    @property
    def extractor_id(self) -> str:
        return f"llm-one-shot:{self._client.client_id}"

    def build_messages(self, text: str) -> List[Dict[str, str]]:
        messages = [dict(m) for m in self._messages]
        messages[-1]["content"] = messages[-1]["content"].replace(PASSAGE_PLACEHOLDER, text)
        return messages

    def extract(self, text: str) -> List[str]:
        reply = self._client.chat(self.build_messages(text))
        entities = parse_entity_response(reply)
        if entities is None:
            if self._audit is not None:
                self._audit.record("extraction_unparsable", level="warning", reply=reply[:200])
            return []
        return entities
