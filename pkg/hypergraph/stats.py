"""Graph-scale statistics for an index (node / hyperedge counts, degree distributions)."""

from __future__ import annotations

from collections import Counter
from typing import Dict, List

import numpy as np

from hypergraph.types import HypergraphIndex, StatsReport


def _histogram(degrees: np.ndarray) -> Dict[int, int]:
    return {int(k): int(v) for k, v in sorted(Counter(degrees.tolist()).items())}


def graph_stats(index: HypergraphIndex) -> StatsReport:
    node_degrees = index.degrees.node_degrees
    edge_degrees = index.degrees.edge_degrees
    nnz = index.incidence.nnz
    return StatsReport(
        n_nodes=index.n_entities,
        n_hyperedges=index.n_passages,
        nnz=nnz,
        zero_degree_hyperedges=int(np.count_nonzero(edge_degrees == 0)),
        mean_entities_per_passage=round(nnz / index.n_passages, 4) if index.n_passages else 0.0,
        mean_passages_per_entity=round(nnz / index.n_entities, 4) if index.n_entities else 0.0,
        max_node_degree=int(node_degrees.max()) if node_degrees.size else 0,
        max_edge_degree=int(edge_degrees.max()) if edge_degrees.size else 0,
        node_degree_histogram=_histogram(node_degrees),
        edge_degree_histogram=_histogram(edge_degrees),
    )


def format_stats_cli(report: StatsReport, max_histogram_rows: int = 10) -> str:
    """Aligned text rendering for the console."""
    lines: List[str] = [
        "Graph Scale",
        "-----------",
        f"{'No. of nodes':<28}{report.n_nodes:>12,}",
        f"{'No. of hyperedges':<28}{report.n_hyperedges:>12,}",
        f"{'Incidences (nnz)':<28}{report.nnz:>12,}",
        f"{'Zero-degree hyperedges':<28}{report.zero_degree_hyperedges:>12,}",
        f"{'Mean entities / passage':<28}{report.mean_entities_per_passage:>12.2f}",
        f"{'Mean passages / entity':<28}{report.mean_passages_per_entity:>12.2f}",
        "",
    ]
    for title, hist in (("Entity degree", report.node_degree_histogram), ("Passage degree", report.edge_degree_histogram)):
        lines.append(f"{title} histogram (degree: count)")
        items = sorted(hist.items())
        for degree, count in items[:max_histogram_rows]:
            lines.append(f"  {degree:>6}: {count:,}")
        if len(items) > max_histogram_rows:
            rest = sum(c for _, c in items[max_histogram_rows:])
            lines.append(f"  {'more':>6}: {rest:,}")
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
