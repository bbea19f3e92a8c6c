"""
Corpus layer: load passages, extract and normalize entities, build the entity catalog.

Usage:
  from corpus_layer import load_corpus, CapitalizedSpanExtractor, ExtractionCache, extract_corpus, build_catalog

  passages = load_corpus(Path("data/corpus.jsonl"))
  entity_sets = extract_corpus(passages, CapitalizedSpanExtractor(), ExtractionCache(Path("index/extraction_cache.jsonl")))
  catalog = build_catalog(entity_sets)
"""

from corpus_layer.catalog import EntityCatalog, build_catalog
from corpus_layer.extraction import (
    ExtractionCache,
    ExtractionError,
    extract_corpus,
    extract_entities,
    extract_query_entities,
)
from corpus_layer.extractors import CapitalizedSpanExtractor, EntityExtractor, LLMEntityExtractor
from corpus_layer.loader import CorpusFormatError, DuplicatePassageError, load_corpus, passages_by_id
from corpus_layer.normalize import normalize_entities, normalize_entity

__all__ = [
    "CapitalizedSpanExtractor",
    "CorpusFormatError",
    "DuplicatePassageError",
    "EntityCatalog",
    "EntityExtractor",
    "ExtractionCache",
    "ExtractionError",
    "LLMEntityExtractor",
    "build_catalog",
    "extract_corpus",
    "extract_entities",
    "extract_query_entities",
    "load_corpus",
    "normalize_entities",
    "normalize_entity",
    "passages_by_id",
]
