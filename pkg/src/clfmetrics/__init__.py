"""Exact multi-class classification metrics.

Confusion-matrix scores (accuracy, balanced accuracy, macro/micro F1,
Matthews correlation, Cohen's kappa) computed in exact integer and rational
arithmetic, probability-space cross-entropy, CSV ingestion, and a CLI for
evaluating and comparing models. Degenerate inputs surface as explicit
Undefined values instead of silent zeros or NaNs.
"""

__version__ = "0.1.0"

from .confusion import (
    ClassOutOfRangeError,
    ClassRegistry,
    ConfusionMatrix,
    EmptyInputError,
    OneVsRest,
    RegistryMismatchError,
    UnknownLabelError,
    from_pairs,
    merge,
    one_vs_rest,
)
from .metrics import (
    ClassWeights,
    EvaluationReport,
    InvalidWeightsError,
    MetricValue,
    PerClassBreakdown,
    UndefinedReason,
    accuracy,
    balanced_accuracy,
    balanced_accuracy_weighted,
    evaluate,
    harmonic_f1,
    kappa_binary,
    kappa_multiclass,
    macro_f1,
    macro_precision,
    macro_recall,
    mcc_binary,
    mcc_multiclass,
    micro_f1,
    misclassification_rate,
    per_class,
)
from .proba import (
    EmptyDatasetError,
    InvalidRecordError,
    MixedDimensionsError,
    ProbRecord,
    XentOptions,
    argmax_rule,
    harden,
    xent_dataset,
    xent_unit,
)
from .ingest import (
    EmptyLabelError,
    IngestError,
    NameMismatchError,
    NegativeEntryError,
    NonSquareError,
    ParseError,
    ProbSumOutOfToleranceError,
    UnknownActualLabelError,
    read_labels,
    read_matrix,
    read_probs,
    read_weights,
    stream_labels,
    stream_probs,
    tally_labels,
)
from .report import (
    ComparisonReport,
    compare_reports,
    format_comparison,
    format_report,
    fraction_decimal,
    parse_json,
    render_comparison_text,
    render_json,
    render_text,
)

__all__ = [
    "__version__",
    "ClassRegistry",
    "ConfusionMatrix",
    "OneVsRest",
    "from_pairs",
    "one_vs_rest",
    "merge",
    "UnknownLabelError",
    "EmptyInputError",
    "ClassOutOfRangeError",
    "RegistryMismatchError",
    "MetricValue",
    "UndefinedReason",
    "ClassWeights",
    "PerClassBreakdown",
    "InvalidWeightsError",
    "EvaluationReport",
    "accuracy",
    "misclassification_rate",
    "per_class",
    "balanced_accuracy",
    "balanced_accuracy_weighted",
    "macro_precision",
    "macro_recall",
    "macro_f1",
    "micro_f1",
    "harmonic_f1",
    "mcc_binary",
    "mcc_multiclass",
    "kappa_binary",
    "kappa_multiclass",
    "evaluate",
    "ProbRecord",
    "XentOptions",
    "xent_unit",
    "xent_dataset",
    "argmax_rule",
    "harden",
    "InvalidRecordError",
    "EmptyDatasetError",
    "MixedDimensionsError",
    "IngestError",
    "ParseError",
    "EmptyLabelError",
    "ProbSumOutOfToleranceError",
    "UnknownActualLabelError",
    "NonSquareError",
    "NegativeEntryError",
    "NameMismatchError",
    "read_labels",
    "read_probs",
    "read_matrix",
    "read_weights",
    "stream_labels",
    "stream_probs",
    "tally_labels",
    "ComparisonReport",
    "compare_reports",
    "format_report",
    "format_comparison",
    "fraction_decimal",
    "parse_json",
    "render_text",
    "render_json",
    "render_comparison_text",
]
