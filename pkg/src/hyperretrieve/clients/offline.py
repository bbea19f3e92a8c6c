"""Offline stand-ins for the chat endpoint; never touch the network."""

from __future__ import annotations

from typing import Dict, Sequence

OFFLINE_ANSWER_PREFIX = "offline answer:"


class OfflineChatClient:
    """Deterministic chat client for pipeline tests and desk-scale runs.

    Echoes the question line of the last user message behind a fixed prefix.
    """

    client_id = "offline-chat"

    def chat(self, messages: Sequence[Dict[str, str]]) -> str:
        content = ""
        for message in reversed(list(messages)):
            if message.get("role") == "user":
                content = message.get("content", "")
                break
        question = ""
        for line in content.splitlines():
            if line.startswith("Question:"):
                question = line[len("Question:"):].strip()
        return f"{OFFLINE_ANSWER_PREFIX} {question}".strip()
