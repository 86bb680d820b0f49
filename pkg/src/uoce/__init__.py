"""Unified opinion concept extraction toolkit.

Ten-slot opinion model, knowledge-graph instantiation with multi-format
serialization, matching-based evaluation metrics, prompt construction, and
an LLM execution harness with caching.
"""

from uoce.dataset import (
    DatasetError,
    DatasetFile,
    DatasetStats,
    PredictionEntry,
    PredictionsFile,
    dataset_stats,
    load_dataset,
    read_predictions,
    save_dataset,
    write_predictions,
)
from uoce.metrics import (
    AgreementMatrix,
    Matching,
    MetricKind,
    ScoreReport,
    agreement,
    brute_force_matching,
    component_level_scores,
    optimal_matching,
    score_task,
    tuple_level_scores,
)
from uoce.model import (
    ABSENT_MARKER,
    DOMAINS,
    INTENSITY_VALUES,
    POLARITY_VALUES,
    REQUIRED_SLOTS,
    SLOT_ORDER,
    SPAN_SLOTS,
    Diagnostic,
    OpinionTuple,
    SentenceRecord,
    Severity,
    Slot,
    TaskKind,
    normalize_text,
    normalize_value,
    project_tuple,
    validate_tuple,
)
from uoce.prompts import (
    ORDERINGS,
    PromptConfig,
    PromptConfigError,
    PromptKind,
    PromptText,
    build_nl_prompt,
    build_onto_prompt,
    build_prompt,
    canonical_output_schema,
)

__version__ = "0.1.0"

__all__ = [
    "ABSENT_MARKER",
    "AgreementMatrix",
    "DOMAINS",
    "DatasetError",
    "DatasetFile",
    "DatasetStats",
    "Diagnostic",
    "INTENSITY_VALUES",
    "Matching",
    "MetricKind",
    "ORDERINGS",
    "OpinionTuple",
    "POLARITY_VALUES",
    "PredictionEntry",
    "PredictionsFile",
    "PromptConfig",
    "PromptConfigError",
    "PromptKind",
    "PromptText",
    "REQUIRED_SLOTS",
    "SLOT_ORDER",
    "SPAN_SLOTS",
    "ScoreReport",
    "SentenceRecord",
    "Severity",
    "Slot",
    "TaskKind",
    "agreement",
    "brute_force_matching",
    "build_nl_prompt",
    "build_onto_prompt",
    "build_prompt",
    "canonical_output_schema",
    "component_level_scores",
    "dataset_stats",
    "load_dataset",
    "normalize_text",
    "normalize_value",
    "optimal_matching",
    "project_tuple",
    "read_predictions",
    "save_dataset",
    "score_task",
    "tuple_level_scores",
    "validate_tuple",
    "write_predictions",
    "__version__",
]
