"""Translation quality checks: length ratios, markdown structure and language errors."""

from dataclasses import dataclass, field

import pandas as pd

from corpus_prep.core.records import read_jsonl
from corpus_prep.evalmetrics.langdetect import LanguageDetector
from corpus_prep.evalmetrics.markdown import markdown_match
from corpus_prep.exceptions import ConfigurationError, RatioError, RecordParseError, ValidationError
from corpus_prep.utils import throw

TRUNCATION_RATIO = 0.7
KEEP_RATIO_RANGE = (0.73, 1.35)
DEFAULT_DATASET = "default"
ERROR_FLAGS = ("empty_original", "truncated", "format_error", "language_error")


@dataclass
class TranslationPair:
    """An original text and its machine translation."""

    id: str
    original: str
    translated: str
    dataset: str = DEFAULT_DATASET
    external_scores: dict = field(default_factory=dict)

    def validate(self):
        if not isinstance(self.id, str) or not self.id:
            throw("Translation pair id must be a non-empty string", ValidationError)
        if not isinstance(self.original, str) or not isinstance(self.translated, str):
            throw(f"Translation pair {self.id}: original and translated must be strings", ValidationError)
        return self


def length_ratio(pair):
    """Characters of the translation per character of the original."""
    if not pair.original:
        throw(f"Translation pair {pair.id}: empty original, length ratio undefined", RatioError)
    return len(pair.translated) / len(pair.original)


def truncation_flag(pair, threshold=TRUNCATION_RATIO):
    """True when the translation is shorter than `threshold` times the original."""
    return length_ratio(pair) < threshold


def length_ratio_keep(pair, lo=KEEP_RATIO_RANGE[0], hi=KEEP_RATIO_RANGE[1]):
    """True when the length ratio lies in [lo, hi]."""
    return lo <= length_ratio(pair) <= hi


def length_ratio_filter(pairs, lo=KEEP_RATIO_RANGE[0], hi=KEEP_RATIO_RANGE[1]):
    """Yield the pairs whose length ratio lies in [lo, hi]; empty originals are dropped."""
    for pair in pairs:
        if pair.original and length_ratio_keep(pair, lo, hi):
            yield pair


@dataclass
class EvalReport:
    total: int = 0
    truncation_rate: float = None
    format_error_rate: float = None
    language_error_rate: float = None
    scores: dict = field(default_factory=dict)
    datasets: list = field(default_factory=list)
    flagged: list = field(default_factory=list)

    def as_dict(self):
        return {
            "total": self.total,
            "truncation_rate": self.truncation_rate,
            "format_error_rate": self.format_error_rate,
            "language_error_rate": self.language_error_rate,
            "scores": dict(self.scores),
            "datasets": list(self.datasets),
        }


def eval_translations(
    pairs,
    check_truncation=True,
    check_format=True,
    check_language=False,
    detector=None,
    target_lang="sl",
    scores=None,
):
    """Aggregate error rates (as percentages) and external score means over translation pairs.

    `scores` maps pair id to {score name: value} and is merged over each pair's
    own external scores. Rates and means are reported overall and per dataset.
    """
    if check_language and detector is None:
        throw("The language error metric needs a language detector", ConfigurationError)
    if detector is not None and not isinstance(detector, LanguageDetector):
        throw(f"{detector!r} does not implement detect(text)", ConfigurationError)

    rows = []
    flagged = []
    for pair in pairs:
        pair.validate()
        row = {"id": pair.id, "dataset": pair.dataset or DEFAULT_DATASET}
        if check_truncation:
            # an empty original has no length ratio
            row["empty_original"] = not pair.original
            row["truncated"] = bool(pair.original) and truncation_flag(pair)
        if check_format:
            row["format_error"] = not markdown_match(pair.original, pair.translated).good
        if check_language:
            detected = detector.detect(pair.translated)
            row["language_error"] = bool(detected) and detected != target_lang
        for name, value in {**pair.external_scores, **(scores or {}).get(pair.id, {})}.items():
            row[f"score:{name}"] = float(value)
        rows.append(row)
        errors = [key for key in ERROR_FLAGS if row.get(key)]
        if errors:
            flagged.append({"id": pair.id, "dataset": row["dataset"], "errors": errors})

    report = EvalReport(total=len(rows), flagged=flagged)
    if not rows:
        return report

    frame = pd.DataFrame(rows)
    overall = _summarize(frame)
    report.truncation_rate = overall.get("truncation_rate")
    report.format_error_rate = overall.get("format_error_rate")
    report.language_error_rate = overall.get("language_error_rate")
    report.scores = overall["scores"]
    report.datasets = [
        {"dataset": dataset, **_summarize(group)} for dataset, group in frame.groupby("dataset", sort=True)
    ]
    return report


def _summarize(frame):
    summary = {"pairs": int(len(frame))}
    for column, key in (
        ("truncated", "truncation_rate"),
        ("format_error", "format_error_rate"),
        ("language_error", "language_error_rate"),
    ):
        if column in frame:
            summary[key] = round(float(frame[column].astype(bool).mean()) * 100, 2)
    summary["scores"] = {
        column.split(":", 1)[1]: round(float(frame[column].mean()), 4)
        for column in sorted(frame.columns)
        if column.startswith("score:") and frame[column].notna().any()
    }
    return summary


def read_translation_pairs(path):
    """Stream pairs from records {id, original, translated, dataset?, scores?}."""
    for line_number, row in read_jsonl(path):
        try:
            yield TranslationPair(
                id=row["id"],
                original=row["original"],
                translated=row["translated"],
                dataset=row.get("dataset") or DEFAULT_DATASET,
                external_scores=dict(row.get("scores") or {}),
            ).validate()
        except (KeyError, TypeError) as e:
            message = f"{path}:{line_number}: invalid translation pair: {e}"
            raise RecordParseError(message, line_number=line_number)


def read_scores(path):
    """Read external scores: records {id, <name>: number, ...}; returns id -> {name: value}."""
    scores = {}
    for line_number, row in read_jsonl(path):
        if not isinstance(row, dict) or "id" not in row:
            message = f"{path}:{line_number}: score record needs an 'id'"
            raise RecordParseError(message, line_number=line_number)
        values = {key: value for key, value in row.items() if key != "id"}
        if not all(_is_number(value) for value in values.values()):
            raise RecordParseError(f"{path}:{line_number}: scores must be numbers", line_number=line_number)
        scores.setdefault(str(row["id"]), {}).update(values)
    return scores


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)
