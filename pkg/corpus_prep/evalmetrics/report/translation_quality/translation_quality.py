"""Translation Quality Report.

Overall and per-dataset error rates of a translated corpus, with the means of
any ingested external scores.
"""

from corpus_prep.evalmetrics.langdetect import load_language_detector
from corpus_prep.evalmetrics.translation import eval_translations, read_scores, read_translation_pairs


def execute(filters=None):
    """Execute the Translation Quality Report."""
    filters = filters or {}
    report = filters.get("report") or evaluate(filters)
    columns = get_columns(report)
    data = get_data(report)

    return columns, data


def evaluate(filters):
    """Run eval_translations from report filters."""
    detector = filters.get("detector")
    if isinstance(detector, str):
        detector = load_language_detector(detector)
    scores = read_scores(filters["scores"]) if filters.get("scores") else None
    return eval_translations(
        read_translation_pairs(filters["pairs"]),
        check_language=detector is not None,
        detector=detector,
        target_lang=filters.get("target_lang", "sl"),
        scores=scores,
    )


def get_columns(report):
    """Get report columns; one column per external score."""
    columns = [
        {"label": "Dataset", "fieldname": "dataset", "fieldtype": "Data", "width": 180},
        {"label": "Pairs", "fieldname": "pairs", "fieldtype": "Int", "width": 80},
    ]
    for name in report.scores:
        columns.append({"label": name, "fieldname": f"score_{name}", "fieldtype": "Float", "width": 100})
    columns += [
        {"label": "Lang error", "fieldname": "language_error_rate", "fieldtype": "Percent", "width": 100},
        {"label": "Trunc error", "fieldname": "truncation_rate", "fieldtype": "Percent", "width": 100},
        {"label": "Markdown error", "fieldname": "format_error_rate", "fieldtype": "Percent", "width": 120},
    ]
    return columns


def get_data(report):
    """Overall row followed by one row per dataset."""
    overall = {
        "dataset": "Overall",
        "pairs": report.total,
        "scores": report.scores,
        "language_error_rate": report.language_error_rate,
        "truncation_rate": report.truncation_rate,
        "format_error_rate": report.format_error_rate,
    }
    return [_row(summary) for summary in [overall, *report.datasets]]


def _row(summary):
    row = {
        "dataset": summary["dataset"],
        "pairs": summary.get("pairs", 0),
        "language_error_rate": summary.get("language_error_rate"),
        "truncation_rate": summary.get("truncation_rate"),
        "format_error_rate": summary.get("format_error_rate"),
    }
    for name, value in (summary.get("scores") or {}).items():
        row[f"score_{name}"] = value
    return row
