"""
On-disk hypergraph index.

Layout of an index directory:
  manifest.json                      counts, corpus hash, extractor id, embedding cache reference
  entities.json                      catalog entries in index order
  passage_ids.json                   passage ids in column order
  incidence/<orientation>.offsets.i32 and .indices.i32   (entity_major, passage_major)
  degrees/node_degrees.i32, degrees/edge_degrees.i32
All binary arrays are flat little-endian 32-bit integers.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
from scipy.sparse import csr_matrix

from hyperretrieve import __version__
from hyperretrieve.utils.io import read_array, read_json, write_array, write_json

from corpus_layer.catalog import EntityCatalog
from hypergraph.types import DegreeVectors, HypergraphIndex, IncidenceMatrix, IndexIntegrityError

INDEX_FORMAT_VERSION = 1
MANIFEST_NAME = "manifest.json"
INT32 = "<i4"


def _orientation_paths(directory: Path, name: str) -> tuple:
    base = directory / "incidence"
    return base / f"{name}.offsets.i32", base / f"{name}.indices.i32"


def build_manifest(index: HypergraphIndex, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    manifest: Dict[str, Any] = {
        "format_version": INDEX_FORMAT_VERSION,
        "package_version": __version__,
        "n_entities": index.n_entities,
        "n_passages": index.n_passages,
        "nnz": index.incidence.nnz,
    }
    manifest.update(index.manifest)
    if extra:
        manifest.update(extra)
    return manifest


def save_index(index: HypergraphIndex, directory: Path) -> Dict[str, Any]:
    """Write every index file, manifest last. Returns the manifest written."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, matrix in (("entity_major", index.incidence.entity_major), ("passage_major", index.incidence.passage_major)):
        offsets_path, indices_path = _orientation_paths(directory, name)
        write_array(offsets_path, matrix.indptr, INT32)
        write_array(indices_path, matrix.indices, INT32)
    write_array(directory / "degrees" / "node_degrees.i32", index.degrees.node_degrees, INT32)
    write_array(directory / "degrees" / "edge_degrees.i32", index.degrees.edge_degrees, INT32)
    write_json(directory / "entities.json", index.catalog.to_list())
    write_json(directory / "passage_ids.json", list(index.passage_ids))
    manifest = build_manifest(index)
    write_json(directory / MANIFEST_NAME, manifest)
    return manifest


def _read_orientation(directory: Path, name: str, shape: tuple) -> csr_matrix:
    offsets_path, indices_path = _orientation_paths(directory, name)
    if not offsets_path.exists() or not indices_path.exists():
        raise IndexIntegrityError(f"Missing incidence files for {name} in {directory}")
    indptr = read_array(offsets_path, INT32).astype(np.int32)
    indices = read_array(indices_path, INT32).astype(np.int32)
    if indptr.shape[0] != shape[0] + 1 or (indptr.size and int(indptr[-1]) != indices.shape[0]):
        raise IndexIntegrityError(f"Corrupt {name} offsets in {directory}")
    if indices.size and (indices.min() < 0 or indices.max() >= shape[1]):
        raise IndexIntegrityError(f"Out-of-range {name} indices in {directory}")
    data = np.ones(indices.shape[0], dtype=np.float64)
    return csr_matrix((data, indices, indptr), shape=shape)


def index_exists(directory: Path) -> bool:
    return (Path(directory) / MANIFEST_NAME).exists()


def load_index(directory: Path) -> HypergraphIndex:
    """Load and cross-check an index directory. Raises IndexIntegrityError on any mismatch."""
    directory = Path(directory)
    if not index_exists(directory):
        raise IndexIntegrityError(f"No index manifest in {directory}")
    manifest = read_json(directory / MANIFEST_NAME)
    if manifest.get("format_version") != INDEX_FORMAT_VERSION:
        raise IndexIntegrityError(f"Unsupported index format {manifest.get('format_version')!r}")
    catalog = EntityCatalog.from_list(read_json(directory / "entities.json"))
    passage_ids = tuple(read_json(directory / "passage_ids.json"))
    n_e, n_p = len(catalog), len(passage_ids)
    if manifest.get("n_entities") != n_e or manifest.get("n_passages") != n_p:
        raise IndexIntegrityError("Manifest counts disagree with catalog / passage ids")

    entity_major = _read_orientation(directory, "entity_major", (n_e, n_p))
    passage_major = _read_orientation(directory, "passage_major", (n_p, n_e))
    transposed = passage_major.transpose().tocsr()
    transposed.sort_indices()
    if not (
        np.array_equal(transposed.indptr, entity_major.indptr)
        and np.array_equal(transposed.indices, entity_major.indices)
    ):
        raise IndexIntegrityError("Entity-major and passage-major incidence disagree")

    node_degrees = read_array(directory / "degrees" / "node_degrees.i32", INT32)
    edge_degrees = read_array(directory / "degrees" / "edge_degrees.i32", INT32)
    if not (
        np.array_equal(node_degrees, np.diff(entity_major.indptr))
        and np.array_equal(edge_degrees, np.diff(passage_major.indptr))
    ):
        raise IndexIntegrityError("Stored degrees disagree with the incidence")

    extra = {
        k: v
        for k, v in manifest.items()
        if k not in ("format_version", "package_version", "n_entities", "n_passages", "nnz")
    }
    return HypergraphIndex(
        catalog=catalog,
        incidence=IncidenceMatrix(entity_major=entity_major, passage_major=passage_major),
        degrees=DegreeVectors(node_degrees=node_degrees.astype(np.int32), edge_degrees=edge_degrees.astype(np.int32)),
        passage_ids=passage_ids,
        manifest=extra,
    )
