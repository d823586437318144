"""
Degenerate inputs stay visible
==============================

Empty denominators do not become 0.0 or NaN: a metric that cannot be
computed says so, with a machine-readable reason, and strict macro
averaging refuses to gloss over missing classes.
"""

from clfmetrics import (
    ConfusionMatrix,
    accuracy,
    balanced_accuracy,
    evaluate,
    macro_precision,
    per_class,
    render_text,
)

# Class "c" exists in the registry but the model never predicts it and it
# never occurs: its column and row are all zero.
m = ConfusionMatrix.from_grid(
    ("a", "b", "c"),
    (
        (8, 2, 0),
        (3, 7, 0),
        (0, 0, 0),
    ),
)

breakdown = per_class(m)
print("precision of c:", breakdown.precision[2])   # Undefined(empty_denominator)
print("recall of c:   ", breakdown.recall[2])

# Strict mode (the default): one undefined class makes the macro average
# undefined too, because silently dropping classes is the classic metrics bug.
print("\nstrict macro precision: ", macro_precision(m))
print("strict balanced accuracy:", balanced_accuracy(m))

# Lenient mode averages the defined classes only, and the report records how
# many classes were skipped so the number cannot masquerade as complete.
print("\nlenient macro precision:", macro_precision(m, lenient=True).unwrap())
report = evaluate(m, lenient=True, dataset="two live classes of three")
print("skipped per metric:", report.skipped_classes)

# A fully empty matrix still yields a well-formed report.
empty = ConfusionMatrix.from_grid(("a", "b"), ((0, 0), (0, 0)))
print("\nempty-matrix accuracy:", accuracy(empty))
print()
print(render_text(evaluate(empty, dataset="no data at all")))
