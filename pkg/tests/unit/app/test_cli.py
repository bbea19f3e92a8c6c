"""Offline end-to-end tests of the command-line entry point."""

import json

import pytest

from app.cli import EXIT_OK, EXIT_PARTIAL, EXIT_PRECONDITION, main

pytestmark = pytest.mark.usefixtures("no_network")

QUERY = "Which country was Albert Einstein born in?"


@pytest.fixture
def run(tmp_path, capsys):
    index_dir = tmp_path / "index"

    def _run(*argv):
        capsys.readouterr()
        code = main([argv[0], "--offline", "--index-dir", str(index_dir), *argv[1:]], env={})
        out, err = capsys.readouterr()
        return code, out, err

    _run.index_dir = index_dir
    return _run


@pytest.fixture
def indexed(run, toy_corpus_path):
    code, _, _ = run("index", "--corpus", str(toy_corpus_path))
    assert code == EXIT_OK
    return run


def _dataset(tmp_path, rows):
    path = tmp_path / "dev.jsonl"
    path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
    return path


def test_index_writes_manifest_and_rerun_is_identical(run, toy_corpus_path):
    code, out, _ = run("index", "--corpus", str(toy_corpus_path))
    assert code == EXIT_OK
    assert "Indexed 3 passages" in out
    manifest_path = run.index_dir / "manifest.json"
    first = manifest_path.read_bytes()
    manifest = json.loads(first)
    assert manifest["n_passages"] == 3
    assert manifest["extractor_id"]
    assert run("index", "--corpus", str(toy_corpus_path))[0] == EXIT_OK
    assert manifest_path.read_bytes() == first


def test_index_rebuild(run, toy_corpus_path):
    run("index", "--corpus", str(toy_corpus_path))
    (run.index_dir / "stray.txt").write_text("x", encoding="utf-8")
    assert run("index", "--corpus", str(toy_corpus_path), "--rebuild")[0] == EXIT_OK
    assert not (run.index_dir / "stray.txt").exists()


def test_index_unreadable_corpus_exits_2(run, tmp_path):
    missing = tmp_path / "nope.jsonl"
    code, _, err = run("index", "--corpus", str(missing))
    assert code == EXIT_PRECONDITION
    assert str(missing) in err


def test_index_reextracts_an_edited_passage(run, toy_corpus_path):
    assert run("index", "--corpus", str(toy_corpus_path))[0] == EXIT_OK
    rows = [json.loads(line) for line in toy_corpus_path.read_text(encoding="utf-8").splitlines()]
    rows[0]["text"] = "Marie Curie lived in Paris."
    toy_corpus_path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
    assert run("index", "--corpus", str(toy_corpus_path))[0] == EXIT_OK
    entities = json.loads((run.index_dir / "entities.json").read_text(encoding="utf-8"))
    assert "marie curie" in entities
    assert "albert einstein" not in entities


def test_index_corpus_with_invalid_utf8_exits_2(run, tmp_path):
    corpus = tmp_path / "bad.jsonl"
    corpus.write_bytes(b'{"id": "p1", "text": "Berlin."}\n{"id": "p2", "text": "\xff\xfe"}\n')
    code, _, err = run("index", "--corpus", str(corpus))
    assert code == EXIT_PRECONDITION
    assert ":2: invalid UTF-8" in err


def test_index_permission_denied_exits_2(run, toy_corpus_path, monkeypatch):
    def _denied(path):
        raise PermissionError(13, "Permission denied", str(path))

    monkeypatch.setattr("app.pipeline.load_corpus", _denied)
    code, _, err = run("index", "--corpus", str(toy_corpus_path))
    assert code == EXIT_PRECONDITION
    assert "Permission denied" in err


def test_index_without_corpus_exits_2(run):
    code, _, err = run("index")
    assert code == EXIT_PRECONDITION
    assert "corpus" in err


def test_retrieve_selects_p1_p2(indexed):
    code, out, _ = indexed("retrieve", QUERY, "--k1", "1", "--k2", "3")
    assert code == EXIT_OK
    result = json.loads(out)
    assert [s["id"] for s in result["selected"]] == ["p1", "p2"]
    assert len(result["topk2"]) == 3
    assert result["diagnostics"]["query_entities"] == ["albert einstein"]


def test_retrieve_dense_mode(indexed):
    code, out, _ = indexed("retrieve", QUERY, "--dense")
    assert code == EXIT_OK
    assert json.loads(out)["diagnostics"]["fallback"] == "dense_only"


def test_retrieve_without_index_exits_2(run):
    code, _, err = run("retrieve", QUERY)
    assert code == EXIT_PRECONDITION
    assert "No index" in err


def test_invalid_flag_value_exits_2(indexed):
    code, _, _ = indexed("retrieve", QUERY, "--k1", "4", "--k2", "2")
    assert code == EXIT_PRECONDITION


def test_answer_offline(indexed):
    code, out, _ = indexed("answer", QUERY, "--k1", "1", "--k2", "3")
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["answer"].startswith("offline answer:")
    assert result["passage_ids"] == ["p1", "p2"]


def test_answer_closed_book_needs_no_index(run):
    code, out, _ = run("answer", QUERY, "--closed-book")
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["closed_book"] is True
    assert result["passage_ids"] == []
    assert result["retrieval"] is None


def test_stats(indexed):
    code, out, _ = indexed("stats")
    assert code == EXIT_OK
    assert "No. of hyperedges" in out
    code, out, _ = indexed("stats", "--json")
    stats = json.loads(out)
    assert stats["n_hyperedges"] == 3
    assert stats["n_nodes"] == 5
    assert stats["nnz"] == 7


def test_eval_is_deterministic(indexed, tmp_path):
    dataset = _dataset(
        tmp_path,
        [
            {"id": "q1", "question": QUERY, "answers": ["Germany"], "gold_passage_ids": ["p1", "p2"]},
            {"id": "q2", "question": "Where do European Union institutions sit?", "answers": ["Brussels"], "gold_passage_ids": ["p3"]},
        ],
    )
    outs = []
    for name in ("a", "b"):
        code, stdout, _ = indexed("eval", str(dataset), "--out", str(tmp_path / name), "--qa")
        assert code == EXIT_OK
        assert "recall@5" in stdout
        outs.append(tmp_path / name)
    for fname in ("report.json", "report.txt"):
        assert (outs[0] / fname).read_bytes() == (outs[1] / fname).read_bytes()
    report = json.loads((outs[0] / "report.json").read_text(encoding="utf-8"))
    assert report["records"][0]["recall"]["5"] == 1.0
    assert "em" in report["aggregates"]
    assert (outs[0] / "timing.json").exists()


def test_eval_missing_gold_exits_1_and_still_writes(indexed, tmp_path):
    dataset = _dataset(
        tmp_path,
        [
            {"question": QUERY, "answers": ["Germany"], "gold_passage_ids": ["p1"]},
            {"question": QUERY, "answers": ["Germany"], "gold_passage_ids": ["p404"]},
        ],
    )
    code, _, err = indexed("eval", str(dataset), "--out", str(tmp_path / "out"))
    assert code == EXIT_PARTIAL
    assert "p404" in err
    report = json.loads((tmp_path / "out" / "report.json").read_text(encoding="utf-8"))
    assert report["aggregates"]["n_errors"] == 1


def test_eval_missing_dataset_exits_2(indexed, tmp_path):
    code, _, _ = indexed("eval", str(tmp_path / "absent.jsonl"))
    assert code == EXIT_PRECONDITION


def test_audit_log_is_written(indexed, tmp_path):
    log = tmp_path / "run.jsonl"
    assert indexed("retrieve", QUERY, "--audit-log", str(log))[0] == EXIT_OK
    steps = [json.loads(line)["step"] for line in log.read_text(encoding="utf-8").splitlines()]
    assert steps[0] == "command_started"


def test_config_file_layer(indexed, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"k1": 1, "k2": 3}), encoding="utf-8")
    code, out, _ = indexed("retrieve", QUERY, "--config", str(path))
    assert code == EXIT_OK
    assert [s["id"] for s in json.loads(out)["selected"]] == ["p1", "p2"]
