"""QA evaluation: answer generation, EM/F1 and Recall@k scoring, and reports."""

from qa_eval.answering import QA_INSTRUCTION, answer, build_prompt, load_instruction
from qa_eval.dataset import DatasetFormatError, load_dataset
from qa_eval.metrics import exact_match, hit_at_k, normalize_answer, recall_at_k, token_f1
from qa_eval.report import generate_text_report, report_to_json, write_report
from qa_eval.runner import evaluate_example, run_eval
from qa_eval.types import RECALL_KS, EvalRecord, EvalReport

__all__ = [
    "DatasetFormatError",
    "EvalRecord",
    "EvalReport",
    "QA_INSTRUCTION",
    "RECALL_KS",
    "answer",
    "build_prompt",
    "evaluate_example",
    "exact_match",
    "generate_text_report",
    "hit_at_k",
    "load_dataset",
    "load_instruction",
    "normalize_answer",
    "recall_at_k",
    "report_to_json",
    "run_eval",
    "token_f1",
    "write_report",
]
