"""Pytest configuration: add repo root and src to path so the layers and hyperretrieve resolve."""

import json
from pathlib import Path
import socket
import sys

import pytest

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
for path in (ROOT, SRC):
    if str(path) not in sys.path:
        sys.path.insert(0, str(path))

from tests.unit.oracles import TOY_CORPUS  # noqa: E402


@pytest.fixture
def no_network(monkeypatch):
    """Fail any test that tries to open a network connection."""

    def _blocked(self, *args, **kwargs):
        raise RuntimeError(f"network access attempted: {args!r}")

    monkeypatch.setattr(socket.socket, "connect", _blocked)
    monkeypatch.setattr(socket.socket, "connect_ex", _blocked)
    monkeypatch.setattr(socket, "create_connection", lambda *a, **k: _blocked(None, *a))


@pytest.fixture
def toy_corpus_path(tmp_path):
    """The three-passage Einstein / Germany / European Union corpus as JSONL."""
    path = tmp_path / "corpus.jsonl"
    path.write_text("".join(json.dumps(row) + "\n" for row in TOY_CORPUS), encoding="utf-8")
    return path
