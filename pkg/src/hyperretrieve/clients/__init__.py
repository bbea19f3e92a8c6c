"""Chat and embedding endpoint clients (remote OpenAI-compatible, offline)."""

from __future__ import annotations

from typing import Dict, Protocol, Sequence

from hyperretrieve.clients.offline import OfflineChatClient
from hyperretrieve.clients.openai_compat import ClientError, EndpointSettings, OpenAICompatibleClient


class ChatClient(Protocol):
    """Anything that turns a chat message list into one reply string."""

    @property
    def client_id(self) -> str:
        ...

    def chat(self, messages: Sequence[Dict[str, str]]) -> str:
        ...


__all__ = [
    "ChatClient",
    "ClientError",
    "EndpointSettings",
    "OfflineChatClient",
    "OpenAICompatibleClient",
]
