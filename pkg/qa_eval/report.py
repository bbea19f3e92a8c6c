"""Evaluation report writers: JSON, an aligned text table, and a separate timing file."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List

from hyperretrieve.utils.io import write_json, write_text_atomic

from qa_eval.types import RECALL_KS, EvalReport

REPORT_JSON = "report.json"
REPORT_TEXT = "report.txt"
TIMING_JSON = "timing.json"


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _table(header: List[str], rows: List[List[str]]) -> List[str]:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return lines


def generate_text_report(report: EvalReport) -> str:
    """Aligned-column report: config echo, aggregates, one row per example."""
    lines: List[str] = ["Retrieval Evaluation Report", ""]
    config = report.config
    if config:
        lines.append("Config: " + ", ".join(f"{k}={config[k]}" for k in sorted(config)))
        lines.append("")

    aggregates = report.aggregates()
    lines.extend(_table(["metric", "value"], [[k, _fmt(v)] for k, v in aggregates.items()]))
    lines.append("")

    header = ["example", *(f"R@{k}" for k in RECALL_KS), *(f"Hit@{k}" for k in RECALL_KS), "|C_q|"]
    if report.qa_enabled:
        header += ["EM", "F1"]
    header.append("error")
    rows: List[List[str]] = []
    for r in report.records:
        row = [r.example_id]
        row += [_fmt(r.recall.get(str(k))) for k in RECALL_KS]
        row += [_fmt(r.hit.get(str(k))) for k in RECALL_KS]
        row.append(str(r.n_selected))
        if report.qa_enabled:
            row += [_fmt(r.em), _fmt(r.f1)]
        row.append(r.error or "")
        rows.append(row)
    lines.extend(_table(header, rows))
    return "\n".join(lines).rstrip() + "\n"


def report_to_json(report: EvalReport) -> str:
    return json.dumps(report.to_dict(include_timing=False), indent=2, ensure_ascii=False) + "\n"


def write_report(out_dir: Path, report: EvalReport) -> Dict[str, Path]:
    """Write report.json, report.txt (both timing-free) and timing.json under out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out_dir / REPORT_JSON,
        "text": out_dir / REPORT_TEXT,
        "timing": out_dir / TIMING_JSON,
    }
    write_text_atomic(paths["json"], report_to_json(report))
    write_text_atomic(paths["text"], generate_text_report(report))
    write_json(paths["timing"], report.timing())
    return paths
