from __future__ import annotations

import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, Sequence

import requests

if TYPE_CHECKING:
    from output_layer.audit_trail import AuditTrail


DEFAULT_TIMEOUT_S = 60.0
DEFAULT_MAX_ATTEMPTS = 3
DEFAULT_BACKOFF_S = 1.0


class ClientError(RuntimeError):
    pass


@dataclass(frozen=True)
class EndpointSettings:
    """Where an OpenAI-compatible endpoint lives and which model to ask for."""

    base_url: str = ""
    api_key: str = ""
    model: str = ""

    def is_configured(self) -> bool:
        return bool(self.base_url and self.model)


class OpenAICompatibleClient:
    """Minimal client for `/chat/completions` and `/embeddings` over requests.

    Every request is retried up to `max_attempts` times with exponential backoff
    (`backoff_s`, 2 * `backoff_s`, ...). Chat requests always use temperature 0.
    """

    def __init__(
        self,
        settings: EndpointSettings,
        *,
        timeout_s: float = DEFAULT_TIMEOUT_S,
        max_attempts: int = DEFAULT_MAX_ATTEMPTS,
        backoff_s: float = DEFAULT_BACKOFF_S,
        session: Optional[requests.Session] = None,
        sleep: Callable[[float], None] = time.sleep,
        audit: Optional["AuditTrail"] = None,
    ):
        if not settings.is_configured():
            raise ClientError("Endpoint needs both a base URL and a model name.")
        self.settings = settings
        self.timeout_s = timeout_s
        self.max_attempts = max(1, max_attempts)
        self.backoff_s = backoff_s
        self._session = session or requests.Session()
        self._sleep = sleep
        self._audit = audit

    @property
    def client_id(self) -> str:
        return f"{self.settings.model}@{self.settings.base_url.rstrip('/')}"

    def _headers(self) -> Dict[str, str]:
        headers = {"Content-Type": "application/json", "User-Agent": "hyperretrieve/0.1"}
        if self.settings.api_key:
            headers["Authorization"] = f"Bearer {self.settings.api_key}"
        return headers

    def _post(self, path: str, payload: Dict[str, Any]) -> Dict[str, Any]:
        url = f"{self.settings.base_url.rstrip('/')}/{path.lstrip('/')}"
        last_error = ""
        for attempt in range(1, self.max_attempts + 1):
            try:
                resp = self._session.post(url, json=payload, headers=self._headers(), timeout=self.timeout_s)
                if resp.status_code == 200:
                    return resp.json()
                last_error = f"HTTP {resp.status_code}"
            except (requests.RequestException, ValueError) as e:
                last_error = str(e) or e.__class__.__name__
            if self._audit is not None:
                self._audit.record("remote_retry", level="warning", url=url, attempt=attempt, error=last_error)
            if attempt < self.max_attempts:
                self._sleep(self.backoff_s * (2 ** (attempt - 1)))
        raise ClientError(f"Request to {url} failed after {self.max_attempts} attempts: {last_error}")

    def chat(self, messages: Sequence[Dict[str, str]]) -> str:
        data = self._post(
            "chat/completions",
            {"model": self.settings.model, "messages": list(messages), "temperature": 0},
        )
        try:
            return data["choices"][0]["message"]["content"] or ""
        except (KeyError, IndexError, TypeError) as e:
            raise ClientError(f"Malformed chat completion response: {e!r}") from e

    def embed(self, texts: Sequence[str]) -> List[List[float]]:
        data = self._post("embeddings", {"model": self.settings.model, "input": list(texts)})
        try:
            rows = sorted(data["data"], key=lambda r: r.get("index", 0))
            vectors = [list(map(float, r["embedding"])) for r in rows]
        except (KeyError, TypeError, ValueError) as e:
            raise ClientError(f"Malformed embeddings response: {e!r}") from e
        if len(vectors) != len(texts):
            raise ClientError(f"Embeddings response has {len(vectors)} rows for {len(texts)} inputs")
        return vectors
