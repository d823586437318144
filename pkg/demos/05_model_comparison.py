"""
Comparing models, including across datasets
===========================================

Two models with identical accuracy can agree with the truth to very
different degrees once chance agreement is subtracted. The comparison
report flags exactly that case, and the same machinery works when the two
sides come from different datasets entirely.
"""

from clfmetrics import ConfusionMatrix, compare_reports, evaluate, render_comparison_text

# Both models score 80/100 on the diagonal, so accuracy ties at 0.8000.
# Model A spreads its errors; model B funnels them into one class, which
# inflates the agreement expected by chance and lowers its kappa.
model_a = ConfusionMatrix.from_grid(("x", "y"), ((60, 10), (10, 20)))
model_b = ConfusionMatrix.from_grid(("x", "y"), ((65, 5), (15, 15)))

report_a = evaluate(model_a, dataset="model A")
report_b = evaluate(model_b, dataset="model B")
print("accuracy A:", report_a.metric("accuracy").unwrap(), " B:", report_b.metric("accuracy").unwrap())
print("kappa    A:", report_a.metric("kappa").unwrap(), "     B:", report_b.metric("kappa").unwrap())

comparison = compare_reports(report_a, report_b)
print()
print(render_comparison_text(comparison))

# Across different datasets the class sets need not match; per-class deltas
# are suppressed and kappa is the row to read, since subtracting the
# marginal-driven chance agreement is what makes the two problems
# commensurable.
other_task = ConfusionMatrix.from_grid(
    ("p", "q", "r"), ((12, 2, 1), (3, 9, 2), (0, 4, 11))
)
cross = compare_reports(report_a, evaluate(other_task, dataset="different task"))
print(render_comparison_text(cross))

# The same comparisons are available from the command line:
#   clfmetrics compare --kind matrix model_a.csv model_b.csv
#   clfmetrics evaluate --kind probs predictions.csv --format json
