"""Tests for prompt construction and answer generation."""

from hyperretrieve.clients import OfflineChatClient
from hyperretrieve.entities import Passage
from qa_eval import QA_INSTRUCTION, answer, build_prompt, load_instruction

PASSAGES = [
    Passage(id="p2", title="Berlin", text="Berlin is the capital of Germany."),
    Passage(id="p1", title="", text="Albert Einstein was born in Germany."),
]


def test_prompt_keeps_passage_rank_order():
    messages = build_prompt("Where was Einstein born?", PASSAGES)
    assert messages[0] == {"role": "system", "content": QA_INSTRUCTION}
    user = messages[1]["content"]
    assert user.index("[1] Title: Berlin") < user.index("[2] Title: p1")
    assert user.endswith("Question: Where was Einstein born?\nAnswer:")


def test_closed_book_prompt_has_no_passages():
    user = build_prompt("  Where was Einstein born? ", [])[1]["content"]
    assert user == "Question: Where was Einstein born?\nAnswer:"


def test_offline_client_answers_with_placeholder():
    reply = answer("Where was Einstein born?", PASSAGES, OfflineChatClient())
    assert reply == "offline answer: Where was Einstein born?"


class RecordingClient:
    client_id = "recording"

    def __init__(self):
        self.messages = None

    def chat(self, messages):
        self.messages = messages
        return "  Germany \n"


def test_answer_strips_reply_and_uses_instruction():
    client = RecordingClient()
    assert answer("q?", PASSAGES[:1], client, instruction="Be brief.") == "Germany"
    assert client.messages[0]["content"] == "Be brief."


def test_load_instruction(tmp_path):
    assert load_instruction(None) == QA_INSTRUCTION
    path = tmp_path / "qa.txt"
    path.write_text("Answer in one word.\n", encoding="utf-8")
    assert load_instruction(path) == "Answer in one word."
    path.write_text("   \n", encoding="utf-8")
    assert load_instruction(path) == QA_INSTRUCTION
