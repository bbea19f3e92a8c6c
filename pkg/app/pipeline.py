"""Workflows behind the CLI: build an index, retrieve, answer, evaluate, report graph stats."""

from __future__ import annotations

import shutil
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

# Path setup for running as app
import sys
ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
for p in (ROOT, SRC):
    if str(p) not in sys.path:
        sys.path.insert(0, str(p))

import numpy as np

from corpus_layer import (
    CapitalizedSpanExtractor,
    EntityExtractor,
    ExtractionCache,
    LLMEntityExtractor,
    build_catalog,
    extract_corpus,
    load_corpus,
    passages_by_id,
)
from embedding_layer import (
    DEFAULT_OFFLINE_DIM,
    EmbeddingCache,
    EmbeddingMatrix,
    Encoder,
    HashingEncoder,
    RemoteEncoder,
    embed_batch,
)
from hyperretrieve.clients import ChatClient, EndpointSettings, OfflineChatClient, OpenAICompatibleClient
from hyperretrieve.entities import Passage
from hyperretrieve.errors import ConfigError
from hyperretrieve.utils.io import read_array, read_json, sha256_file, write_array, write_jsonl
from hypergraph import (
    HypergraphIndex,
    IndexIntegrityError,
    StatsReport,
    build_incidence,
    compute_degrees,
    graph_stats,
    index_exists,
    load_index,
    save_index,
)
from hypergraph.store import MANIFEST_NAME
from output_layer.audit_trail import AuditTrail
from qa_eval import EvalReport, answer, load_dataset, load_instruction, run_eval, write_report
from retrieval_engine import HypergraphRetriever

from app.config import AppConfig

PASSAGES_FILE = "passages.jsonl"
EXTRACTION_CACHE_FILE = "extraction_cache.jsonl"
EMBEDDING_CACHE_DIR = "embedding_cache"
VECTORS_DIR = "vectors"
FLOAT32 = "<f4"


def _remote_client(settings: EndpointSettings, config: AppConfig, audit: Optional[AuditTrail]) -> OpenAICompatibleClient:
    return OpenAICompatibleClient(
        settings,
        timeout_s=config.timeout_s,
        max_attempts=config.max_attempts,
        audit=audit,
    )


def build_extractor(config: AppConfig, audit: Optional[AuditTrail] = None) -> EntityExtractor:
    if config.offline:
        return CapitalizedSpanExtractor()
    client = _remote_client(config.require_llm(), config, audit)
    if config.extraction_prompt is not None:
        return LLMEntityExtractor.from_template_file(client, config.extraction_prompt, audit=audit)
    return LLMEntityExtractor(client, audit=audit)


def build_encoder(config: AppConfig, audit: Optional[AuditTrail] = None) -> Encoder:
    if config.offline:
        return HashingEncoder(config.embedding_dim or DEFAULT_OFFLINE_DIM)
    settings = config.require_embedding()
    return RemoteEncoder(
        _remote_client(settings, config, audit),
        dim=int(config.embedding_dim or 0),
        batch_size=config.embedding_batch_size,
        max_workers=config.max_workers,
    )


def build_chat_client(config: AppConfig, audit: Optional[AuditTrail] = None) -> ChatClient:
    if config.offline:
        return OfflineChatClient()
    return _remote_client(config.require_llm(), config, audit)


def _reset_stale_extraction_cache(index_dir: Path, extractor_id: str, audit: Optional[AuditTrail]) -> None:
    """Entities cached under another extractor must not leak into this build."""
    manifest_path = index_dir / MANIFEST_NAME
    cache_path = index_dir / EXTRACTION_CACHE_FILE
    if not manifest_path.exists() or not cache_path.exists():
        return
    previous = read_json(manifest_path).get("extractor_id")
    if previous and previous != extractor_id:
        cache_path.unlink()
        if audit is not None:
            audit.record("extraction_cache_reset", level="warning", previous=previous, current=extractor_id)


def _write_rows(path: Path, rows: EmbeddingMatrix) -> None:
    write_array(path, rows.values.reshape(-1), FLOAT32)


def _read_rows(path: Path, n_rows: int, dim: int) -> EmbeddingMatrix:
    if not path.exists():
        raise IndexIntegrityError(f"Missing embedding rows: {path}")
    flat = read_array(path, FLOAT32)
    if flat.size != n_rows * dim:
        raise IndexIntegrityError(f"{path} holds {flat.size} floats, expected {n_rows} x {dim}")
    return EmbeddingMatrix(values=flat.astype(np.float32).reshape(n_rows, dim))


def build_index(config: AppConfig, audit: Optional[AuditTrail] = None) -> Dict[str, Any]:
    """Corpus -> entity sets -> catalog -> incidence -> embeddings -> index directory.

    Warm extraction and embedding caches make a rerun issue no remote calls and
    write the same manifest. Returns the manifest.
    """
    if config.corpus is None:
        raise ConfigError("No corpus given: pass --corpus or set HYPERRETRIEVE_CORPUS.")
    corpus_path = Path(config.corpus)
    if not corpus_path.is_file():
        raise FileNotFoundError(f"Corpus not readable: {corpus_path}")
    index_dir = Path(config.index_dir)
    index_dir.mkdir(parents=True, exist_ok=True)

    passages = load_corpus(corpus_path)
    extractor = build_extractor(config, audit)
    encoder = build_encoder(config, audit)
    if audit is not None:
        audit.record("index_build_started", corpus=str(corpus_path), passages=len(passages))

    _reset_stale_extraction_cache(index_dir, extractor.extractor_id, audit)
    entity_sets = extract_corpus(
        passages,
        extractor,
        ExtractionCache(index_dir / EXTRACTION_CACHE_FILE),
        max_workers=config.max_workers,
        audit=audit,
    )
    catalog = build_catalog(entity_sets)
    incidence = build_incidence(entity_sets, catalog)

    embedding_cache = EmbeddingCache(index_dir / EMBEDDING_CACHE_DIR, encoder.encoder_id, encoder.dim)
    if embedding_cache.invalidated and audit is not None:
        audit.record("embedding_cache_reset", level="warning", encoder=encoder.encoder_id)
    try:
        passage_rows = embed_batch([p.embedding_text() for p in passages], encoder, embedding_cache, audit)
        entity_rows = embed_batch(catalog.to_list(), encoder, embedding_cache, audit)
    finally:
        embedding_cache.save()
    _write_rows(index_dir / VECTORS_DIR / "passages.f32", passage_rows)
    _write_rows(index_dir / VECTORS_DIR / "entities.f32", entity_rows)
    write_jsonl(index_dir / PASSAGES_FILE, [p.to_dict() for p in passages])

    index = HypergraphIndex(
        catalog=catalog,
        incidence=incidence,
        degrees=compute_degrees(incidence),
        passage_ids=tuple(p.id for p in passages),
        manifest={
            "corpus_sha256": sha256_file(corpus_path),
            "extractor_id": extractor.extractor_id,
            "embedding": {
                "cache_dir": EMBEDDING_CACHE_DIR,
                "vectors_dir": VECTORS_DIR,
                "encoder_id": encoder.encoder_id,
                "dim": encoder.dim,
            },
        },
    )
    manifest = save_index(index, index_dir)
    if audit is not None:
        audit.record(
            "index_build_completed",
            index_dir=str(index_dir),
            n_entities=index.n_entities,
            n_passages=index.n_passages,
            nnz=index.incidence.nnz,
        )
    return manifest


def open_index(config: AppConfig) -> HypergraphIndex:
    index_dir = Path(config.index_dir)
    if not index_exists(index_dir):
        raise FileNotFoundError(f"No index at {index_dir}; run the index command first.")
    return load_index(index_dir)


def load_retriever(
    config: AppConfig, audit: Optional[AuditTrail] = None
) -> Tuple[HypergraphRetriever, Dict[str, Passage]]:
    """Load the index with its aligned embedding rows and stored passages.

    The configured extractor and encoder must be the ones the index was built with.
    """
    index = open_index(config)
    index_dir = Path(config.index_dir)
    encoder = build_encoder(config, audit)
    extractor = build_extractor(config, audit)
    embedding = index.manifest.get("embedding") or {}
    if embedding.get("encoder_id") != encoder.encoder_id or embedding.get("dim") != encoder.dim:
        raise IndexIntegrityError(
            f"Index was embedded with {embedding.get('encoder_id')!r} (dim {embedding.get('dim')}), "
            f"but the configured encoder is {encoder.encoder_id!r} (dim {encoder.dim})."
        )
    if index.manifest.get("extractor_id") != extractor.extractor_id:
        raise IndexIntegrityError(
            f"Index entities came from {index.manifest.get('extractor_id')!r}, "
            f"but the configured extractor is {extractor.extractor_id!r}."
        )
    vectors_dir = index_dir / embedding.get("vectors_dir", VECTORS_DIR)
    passage_rows = _read_rows(vectors_dir / "passages.f32", index.n_passages, encoder.dim).with_keys(index.passage_ids)
    entity_rows = _read_rows(vectors_dir / "entities.f32", index.n_entities, encoder.dim).with_keys(index.catalog.entities)

    passages = load_corpus(index_dir / PASSAGES_FILE)
    if tuple(p.id for p in passages) != index.passage_ids:
        raise IndexIntegrityError("Stored passages do not match the index passage ids")
    retriever = HypergraphRetriever(index, passage_rows, entity_rows, encoder, extractor, audit=audit)
    return retriever, passages_by_id(passages)


def run_retrieve(config: AppConfig, query: str, audit: Optional[AuditTrail] = None) -> Dict[str, Any]:
    retriever, _ = load_retriever(config, audit)
    result = retriever.retrieve(query, config.retrieval)
    return result.to_dict(retriever.index.passage_ids)


def run_answer(
    config: AppConfig,
    query: str,
    closed_book: bool = False,
    audit: Optional[AuditTrail] = None,
) -> Dict[str, Any]:
    """Retrieve then answer; closed-book skips retrieval and the index entirely."""
    llm = build_chat_client(config, audit)
    instruction = load_instruction(config.qa_prompt)
    context: List[Passage] = []
    retrieval: Optional[Dict[str, Any]] = None
    if not closed_book:
        retriever, passages = load_retriever(config, audit)
        result = retriever.retrieve(query, config.retrieval)
        retrieval = result.to_dict(retriever.index.passage_ids)
        context = [passages[pid] for pid in result.selected_ids(retriever.index.passage_ids)]
    reply = answer(query, context, llm, instruction)
    if audit is not None:
        audit.record("answer_generated", query=query, closed_book=closed_book, passages=len(context))
    return {
        "query": query,
        "answer": reply,
        "closed_book": closed_book,
        "passage_ids": [p.id for p in context],
        "retrieval": retrieval,
    }


def run_evaluation(
    config: AppConfig,
    dataset_path: Path,
    out_dir: Path,
    with_qa: bool = False,
    audit: Optional[AuditTrail] = None,
) -> Tuple[EvalReport, Dict[str, Path]]:
    dataset_path = Path(dataset_path)
    if not dataset_path.is_file():
        raise FileNotFoundError(f"Dataset not readable: {dataset_path}")
    dataset = load_dataset(dataset_path)
    retriever, passages = load_retriever(config, audit)
    llm = build_chat_client(config, audit) if with_qa else None
    report = run_eval(
        dataset,
        retriever,
        config.retrieval,
        passages,
        llm=llm,
        max_workers=config.max_workers,
        instruction=load_instruction(config.qa_prompt),
        audit=audit,
    )
    return report, write_report(out_dir, report)


def run_stats(config: AppConfig) -> StatsReport:
    return graph_stats(open_index(config))


def clear_index(config: AppConfig) -> None:
    """Remove an index directory, caches included."""
    index_dir = Path(config.index_dir)
    if index_dir.exists():
        shutil.rmtree(index_dir)
