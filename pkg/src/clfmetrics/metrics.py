"""Confusion-matrix scalar metrics with explicit defined/undefined propagation.

Every metric keeps its numerator and denominator as exact integers (or exact
rationals built from them) and divides once at the end, so values like 37/52
are reproducible bit for bit. A metric whose denominator vanishes is returned
as an explicit Undefined value carrying a machine-readable reason; it is never
silently coerced to 0 or NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

from .confusion import ConfusionMatrix, OneVsRest

Numeric = Union[Fraction, float]


class UndefinedReason(Enum):
    EMPTY_DENOMINATOR = "empty_denominator"
    DEGENERATE_ZERO_OVER_ZERO = "degenerate_zero_over_zero"


class InvalidWeightsError(ValueError):
    """Class weights hold a negative entry or sum to zero."""


@dataclass(frozen=True)
class MetricValue:
    """A computed scalar that is either Defined(value) or Undefined(reason).

    Defined values are exact Fractions wherever the metric is a ratio of
    integer tallies; only square-root-based metrics may fall back to float.
    """

    value: Numeric | None = None
    reason: UndefinedReason | None = None

    def __post_init__(self) -> None:
        if (self.value is None) == (self.reason is None):
            raise ValueError("exactly one of value and reason must be set")

    @classmethod
    def defined(cls, value: Numeric) -> "MetricValue":
        return cls(value=value)

    @classmethod
    def undefined(cls, reason: UndefinedReason) -> "MetricValue":
        return cls(reason=reason)

    @property
    def is_defined(self) -> bool:
        return self.value is not None

    def unwrap(self) -> Numeric:
        if self.value is None:
            raise ValueError(f"metric is undefined ({self.reason.value})")
        return self.value

    def as_float(self) -> float:
        return float(self.unwrap())


_UNDEF_EMPTY = MetricValue.undefined(UndefinedReason.EMPTY_DENOMINATOR)
_UNDEF_ZERO_OVER_ZERO = MetricValue.undefined(UndefinedReason.DEGENERATE_ZERO_OVER_ZERO)


@dataclass(frozen=True)
class ClassWeights:
    """Non-negative per-class weights with a positive sum."""

    w: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        converted = tuple(x if isinstance(x, Fraction) else Fraction(x) for x in self.w)
        if any(x < 0 for x in converted):
            raise InvalidWeightsError(f"weights must be non-negative, got {self.w!r}")
        if sum(converted) == 0:
            raise InvalidWeightsError("weights must not all be zero")
        object.__setattr__(self, "w", converted)

    @property
    def total(self) -> Fraction:
        return sum(self.w, Fraction(0))

    @classmethod
    def uniform(cls, k: int) -> "ClassWeights":
        return cls(tuple(Fraction(1) for _ in range(k)))

    @classmethod
    def from_actual_frequencies(cls, m: ConfusionMatrix) -> "ClassWeights":
        """Weight each class by its share of the actual (row) totals."""
        s = m.grand_total
        if s == 0:
            raise InvalidWeightsError("cannot derive frequency weights from an empty matrix")
        return cls(tuple(Fraction(t, s) for t in m.row_totals))


@dataclass(frozen=True)
class PerClassBreakdown:
    """Positionally class-aligned precision, recall and F1 vectors."""

    precision: tuple[MetricValue, ...]
    recall: tuple[MetricValue, ...]
    f1: tuple[MetricValue, ...]


def accuracy(m: ConfusionMatrix) -> MetricValue:
    """Fraction of all units on the main diagonal, trace/total."""
    s = m.grand_total
    if s == 0:
        return _UNDEF_EMPTY
    return MetricValue.defined(Fraction(m.trace, s))


def misclassification_rate(m: ConfusionMatrix) -> MetricValue:
    """The quantity missing from accuracy to reach 1."""
    acc = accuracy(m)
    if not acc.is_defined:
        return acc
    return MetricValue.defined(1 - acc.unwrap())


def harmonic_f1(precision: MetricValue | Numeric, recall: MetricValue | Numeric) -> MetricValue:
    """Harmonic mean of a precision and a recall, 2pr/(p+r).

    Undefined reasons propagate; two defined zeros are a degenerate 0/0.
    """
    if isinstance(precision, MetricValue):
        if not precision.is_defined:
            return precision
        precision = precision.unwrap()
    if isinstance(recall, MetricValue):
        if not recall.is_defined:
            return recall
        recall = recall.unwrap()
    denom = precision + recall
    if denom == 0:
        return _UNDEF_ZERO_OVER_ZERO
    return MetricValue.defined(2 * precision * recall / denom)


def per_class(m: ConfusionMatrix) -> PerClassBreakdown:
    """One-vs-rest precision, recall and F1 for every class.

    A never-predicted class has undefined precision, a class absent from the
    actual labels has undefined recall; F1 inherits the first undefined input.
    """
    precisions: list[MetricValue] = []
    recalls: list[MetricValue] = []
    f1s: list[MetricValue] = []
    for k in range(m.k):
        o = m.one_vs_rest(k)
        prec = (
            MetricValue.defined(Fraction(o.tp, o.tp + o.fp))
            if o.tp + o.fp > 0
            else _UNDEF_EMPTY
        )
        rec = (
            MetricValue.defined(Fraction(o.tp, o.tp + o.fn))
            if o.tp + o.fn > 0
            else _UNDEF_EMPTY
        )
        precisions.append(prec)
        recalls.append(rec)
        f1s.append(harmonic_f1(prec, rec))
    return PerClassBreakdown(tuple(precisions), tuple(recalls), tuple(f1s))


def _mean_of(values: Sequence[MetricValue], lenient: bool) -> MetricValue:
    """Arithmetic mean of per-class metric values.

    Strict mode refuses to average past an undefined entry; lenient mode
    averages the defined entries only.
    """
    if not lenient:
        for v in values:
            if not v.is_defined:
                return MetricValue.undefined(v.reason)
        return MetricValue.defined(sum((v.unwrap() for v in values), Fraction(0)) / len(values))
    defined = [v.unwrap() for v in values if v.is_defined]
    if not defined:
        return _UNDEF_EMPTY
    return MetricValue.defined(sum(defined, Fraction(0)) / len(defined))


def balanced_accuracy(m: ConfusionMatrix, lenient: bool = False) -> MetricValue:
    """Unweighted mean of per-class recalls, computed from the diagonal and row totals."""
    recalls = [
        MetricValue.defined(Fraction(m.counts[k][k], m.row_totals[k]))
        if m.row_totals[k] > 0
        else _UNDEF_EMPTY
        for k in range(m.k)
    ]
    return _mean_of(recalls, lenient)


def balanced_accuracy_weighted(
    m: ConfusionMatrix, weights: ClassWeights, lenient: bool = False
) -> MetricValue:
    """Weighted mean of per-class recalls, sum(w_k * recall_k) / sum(w_k).

    With weights proportional to the actual class frequencies this collapses
    to plain accuracy. A zero-weight class never forces the result undefined;
    in lenient mode undefined-recall classes are dropped and the weight sum
    is renormalized over the classes kept.
    """
    if len(weights.w) != m.k:
        raise InvalidWeightsError(f"expected {m.k} weights, got {len(weights.w)}")
    acc_num = Fraction(0)
    acc_w = Fraction(0)
    for k, w_k in enumerate(weights.w):
        if w_k == 0:
            continue
        if m.row_totals[k] == 0:
            if lenient:
                continue
            return _UNDEF_EMPTY
        acc_num += w_k * Fraction(m.counts[k][k], m.row_totals[k])
        acc_w += w_k
    if acc_w == 0:
        return _UNDEF_EMPTY
    return MetricValue.defined(acc_num / acc_w)


def macro_precision(m: ConfusionMatrix, lenient: bool = False) -> MetricValue:
    """Unweighted mean of per-class precisions."""
    return _mean_of(per_class(m).precision, lenient)


def macro_recall(m: ConfusionMatrix, lenient: bool = False) -> MetricValue:
    """Unweighted mean of per-class recalls via the one-vs-rest breakdown."""
    return _mean_of(per_class(m).recall, lenient)


def macro_f1(m: ConfusionMatrix, lenient: bool = False) -> MetricValue:
    """Harmonic mean of macro precision and macro recall."""
    return harmonic_f1(macro_precision(m, lenient), macro_recall(m, lenient))


def micro_f1(m: ConfusionMatrix) -> MetricValue:
    """Pooled F1 over all units: sum of per-class TP over the grand total.

    Deliberately computed through the one-vs-rest tiles rather than the
    diagonal shortcut, so its equality with accuracy stays a checkable fact.
    """
    s = m.grand_total
    if s == 0:
        return _UNDEF_EMPTY
    tp_sum = sum(m.one_vs_rest(k).tp for k in range(m.k))
    return MetricValue.defined(Fraction(tp_sum, s))


def _root_ratio(numerator: int, radicand: int) -> Numeric:
    """numerator / sqrt(radicand) with one division at the end.

    Returns an exact Fraction when the radicand is a perfect square (perfect
    predictions, fully swapped labels, symmetric marginals), a float otherwise.
    """
    root = math.isqrt(radicand)
    if root * root == radicand:
        return Fraction(numerator, root)
    return numerator / math.sqrt(radicand)


def mcc_binary(o: OneVsRest) -> MetricValue:
    """Matthews correlation for a two-class tiling.

    (tp*tn - fp*fn) / sqrt((tp+fn)(tp+fp)(tn+fn)(tn+fp)). Any zero factor
    under the root means one marginal is a point mass and the score is 0 by
    convention, matching the no-correlation reading of an all-one-class
    prediction.
    """
    s = o.total
    if s == 0:
        return _UNDEF_EMPTY
    factors = (o.tp + o.fn, o.tp + o.fp, o.tn + o.fn, o.tn + o.fp)
    if any(f == 0 for f in factors):
        return MetricValue.defined(Fraction(0))
    numerator = o.tp * o.tn - o.fp * o.fn
    radicand = factors[0] * factors[1] * factors[2] * factors[3]
    return MetricValue.defined(_root_ratio(numerator, radicand))


def _marginal_products(m: ConfusionMatrix) -> tuple[int, int, int, int, int]:
    """Exact integer intermediates: trace, total, sum p*t, sum p^2, sum t^2."""
    p = m.col_totals
    t = m.row_totals
    sum_pt = sum(pk * tk for pk, tk in zip(p, t))
    sum_p2 = sum(pk * pk for pk in p)
    sum_t2 = sum(tk * tk for tk in t)
    return m.trace, m.grand_total, sum_pt, sum_p2, sum_t2


def mcc_multiclass(m: ConfusionMatrix) -> MetricValue:
    """Matthews correlation for K classes.

    (c*s - sum p_k t_k) / sqrt((s^2 - sum p_k^2)(s^2 - sum t_k^2)) over the
    column totals p and row totals t, all in exact integer arithmetic until
    the final division. A zero radicand factor yields 0 by convention.
    """
    c, s, sum_pt, sum_p2, sum_t2 = _marginal_products(m)
    if s == 0:
        return _UNDEF_EMPTY
    r1 = s * s - sum_p2
    r2 = s * s - sum_t2
    if r1 == 0 or r2 == 0:
        return MetricValue.defined(Fraction(0))
    return MetricValue.defined(_root_ratio(c * s - sum_pt, r1 * r2))


def kappa_binary(o: OneVsRest) -> MetricValue:
    """Chance-corrected agreement for a two-class tiling, (Po - Pe)/(1 - Pe).

    Po is the observed accuracy; Pe adds the marginal products of the
    positive and negative class, the accuracy a marginal-preserving random
    classifier attains. When Pe equals 1 both marginals are point masses on
    one class and the score is 1 for perfect agreement, 0 otherwise.
    """
    s = o.total
    if s == 0:
        return _UNDEF_EMPTY
    po = Fraction(o.tp + o.tn, s)
    p_positive = Fraction(o.tp + o.fn, s) * Fraction(o.tp + o.fp, s)
    p_negative = Fraction(o.tn + o.fp, s) * Fraction(o.tn + o.fn, s)
    pe = p_positive + p_negative
    if pe == 1:
        return MetricValue.defined(Fraction(1) if po == 1 else Fraction(0))
    return MetricValue.defined((po - pe) / (1 - pe))


def kappa_multiclass(m: ConfusionMatrix) -> MetricValue:
    """Chance-corrected agreement for K classes.

    (c*s - sum p_k t_k) / (s^2 - sum p_k t_k): the same numerator as the
    multiclass Matthews correlation over a plain (non-root) denominator.
    A zero denominator degenerates exactly like Pe = 1 in the binary form.
    """
    c, s, sum_pt, _, _ = _marginal_products(m)
    if s == 0:
        return _UNDEF_EMPTY
    denominator = s * s - sum_pt
    if denominator == 0:
        return MetricValue.defined(Fraction(1) if c == s else Fraction(0))
    return MetricValue.defined(Fraction(c * s - sum_pt, denominator))


METRIC_ORDER = (
    "accuracy",
    "misclassification_rate",
    "balanced_accuracy",
    "balanced_accuracy_weighted",
    "macro_precision",
    "macro_recall",
    "macro_f1",
    "micro_f1",
    "mcc",
    "kappa",
)

DEFAULT_EPSILON = 1e-15


@dataclass(frozen=True)
class EvaluationReport:
    """Every metric for one dataset/model pair, plus the options that produced it."""

    dataset: str
    labels: tuple[str, ...]
    total_units: int
    metrics: dict[str, MetricValue]
    per_class: PerClassBreakdown
    mode: str = "strict"
    weights_source: str = "frequency"
    epsilon: float = DEFAULT_EPSILON
    reduce: str = "mean"
    cross_entropy: float | None = None
    skipped_classes: dict[str, int] | None = None
    tool_version: str = ""

    @property
    def k(self) -> int:
        return len(self.labels)

    def metric(self, name: str) -> MetricValue:
        return self.metrics[name]


def _count_undefined(values: Sequence[MetricValue]) -> int:
    return sum(1 for v in values if not v.is_defined)


def evaluate(
    m: ConfusionMatrix,
    weights: ClassWeights | None = None,
    *,
    lenient: bool = False,
    dataset: str = "",
    weights_source: str | None = None,
    epsilon: float = DEFAULT_EPSILON,
    reduce: str = "mean",
    cross_entropy: float | None = None,
    tool_version: str | None = None,
) -> EvaluationReport:
    """Compute the full metric suite for one matrix.

    Weights default to the actual-class frequencies. Degenerate inputs
    propagate as Undefined entries; the report is always well-formed. In
    lenient mode the macro averages skip undefined classes and the number
    skipped per metric is recorded in the report.
    """
    from . import __version__

    if weights is None:
        if weights_source is None:
            weights_source = "frequency"
        if m.grand_total > 0:
            weights = ClassWeights.from_actual_frequencies(m)
    elif weights_source is None:
        weights_source = "custom"

    breakdown = per_class(m)
    if weights is not None:
        weighted = balanced_accuracy_weighted(m, weights, lenient)
    else:
        weighted = _UNDEF_EMPTY

    values: dict[str, MetricValue] = {
        "accuracy": accuracy(m),
        "misclassification_rate": misclassification_rate(m),
        "balanced_accuracy": balanced_accuracy(m, lenient),
        "balanced_accuracy_weighted": weighted,
        "macro_precision": _mean_of(breakdown.precision, lenient),
        "macro_recall": _mean_of(breakdown.recall, lenient),
        "macro_f1": macro_f1(m, lenient),
        "micro_f1": micro_f1(m),
        "mcc": mcc_multiclass(m),
        "kappa": kappa_multiclass(m),
    }

    skipped: dict[str, int] | None = None
    if lenient:
        undef_recall = _count_undefined(breakdown.recall)
        weighted_skipped = 0
        if weights is not None:
            weighted_skipped = sum(
                1
                for k, w_k in enumerate(weights.w)
                if w_k > 0 and not breakdown.recall[k].is_defined
            )
        skipped = {
            "balanced_accuracy": undef_recall,
            "balanced_accuracy_weighted": weighted_skipped,
            "macro_precision": _count_undefined(breakdown.precision),
            "macro_recall": undef_recall,
        }

    return EvaluationReport(
        dataset=dataset,
        labels=m.registry.labels,
        total_units=m.grand_total,
        metrics=values,
        per_class=breakdown,
        mode="lenient" if lenient else "strict",
        weights_source=weights_source,
        epsilon=epsilon,
        reduce=reduce,
        cross_entropy=cross_entropy,
        skipped_classes=skipped,
        tool_version=tool_version if tool_version is not None else __version__,
    )
