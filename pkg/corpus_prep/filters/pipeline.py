"""Filter pipeline: resolve configured filters and run them over documents."""

import inspect
import json
from dataclasses import dataclass, field

from corpus_prep import hooks
from corpus_prep.exceptions import ConfigurationError
from corpus_prep.filters.text_filters import count_paragraphs
from corpus_prep.utils import get_attr, logger, throw

PARAGRAPH_FILTERS = ("filter_long_paragraphs", "collapse_repeated_paragraphs")


@dataclass
class FilterReport:
    """Counts gathered while filtering; merge() is associative."""

    docs_in: int = 0
    docs_out: int = 0
    paragraphs_removed: int = 0
    chars_changed: int = 0
    per_filter: dict = field(default_factory=dict)

    def merge(self, other):
        """Return the sum of two reports."""
        per_filter = dict(self.per_filter)
        for name, count in other.per_filter.items():
            per_filter[name] = per_filter.get(name, 0) + count
        return FilterReport(
            docs_in=self.docs_in + other.docs_in,
            docs_out=self.docs_out + other.docs_out,
            paragraphs_removed=self.paragraphs_removed + other.paragraphs_removed,
            chars_changed=self.chars_changed + other.chars_changed,
            per_filter=per_filter,
        )

    def as_dict(self):
        return {
            "docs_in": self.docs_in,
            "docs_out": self.docs_out,
            "paragraphs_removed": self.paragraphs_removed,
            "chars_changed": self.chars_changed,
            "per_filter": dict(self.per_filter),
        }


@dataclass(frozen=True)
class ResolvedFilter:
    name: str
    function: object
    params: tuple = ()

    def __call__(self, text):
        return self.function(text, **dict(self.params))


def filter_names(profiles=None):
    """Default filter order followed by the filters each profile appends."""
    names = list(hooks.default_filters)
    for profile in profiles or []:
        if profile not in hooks.filter_profiles:
            throw(f"Unknown filter profile: {profile}", ConfigurationError)
        names.extend(name for name in hooks.filter_profiles[profile] if name not in names)
    return names


def resolve_filters(filters):
    """Resolve filter names or {name, params} items; every parameter is checked up front."""
    resolved = []
    for item in filters:
        if isinstance(item, ResolvedFilter):
            resolved.append(item)
            continue
        if isinstance(item, str):
            name, params = item, {}
        elif isinstance(item, dict) and isinstance(item.get("name"), str):
            name, params = item["name"], item.get("params") or {}
        else:
            throw(f"Invalid filter entry: {item!r}", ConfigurationError)

        if name not in hooks.text_filters:
            throw(f"Unknown filter: {name}", ConfigurationError)
        function = get_attr(hooks.text_filters[name])
        try:
            inspect.signature(function).bind("", **params)
        except TypeError as e:
            throw(f"Invalid parameters for filter {name}: {e}", ConfigurationError)
        resolved.append(ResolvedFilter(name, function, tuple(sorted(params.items()))))
    return resolved


def load_filter_config(config=None, profiles=None):
    """Build the filter list from a config dict or JSON file.

    Without a `filters` entry the default order (plus profiles) is used. The
    `mojibake` and `diacritics` tables are passed to the filters that use them.
    """
    if isinstance(config, str):
        try:
            with open(config, encoding="utf-8") as f:
                config = json.load(f)
        except OSError as e:
            throw(f"Cannot read filter config {config}: {e.strerror or e}", ConfigurationError)
        except json.JSONDecodeError as e:
            throw(f"Filter config is not valid JSON: {e.msg}", ConfigurationError)
    config = config or {}
    if not isinstance(config, dict):
        throw("Filter config must be an object", ConfigurationError)

    entries = config.get("filters") or filter_names(profiles)
    if config.get("filters") and profiles:
        # an explicit list gets only the profile filters appended, not the defaults
        names = {entry if isinstance(entry, str) else _entry_name(entry) for entry in entries}
        appended = [name for name in filter_names(profiles) if name not in hooks.default_filters]
        entries = list(entries) + [name for name in appended if name not in names]

    tables = {"reformat_unicode": "mojibake", "correct_diacritics": "diacritics"}
    filters = []
    for entry in entries:
        name = entry if isinstance(entry, str) else _entry_name(entry)
        table_key = tables.get(name)
        if table_key and config.get(table_key):
            params = dict(entry.get("params") or {}) if isinstance(entry, dict) else {}
            params.setdefault(table_key, config[table_key])
            entry = {"name": name, "params": params}
        filters.append(entry)
    return resolve_filters(filters)


def apply_pipeline(doc, filters):
    """Apply filters in order; returns (filtered document, FilterReport)."""
    report = FilterReport(docs_in=1)
    text = doc.text
    for item in resolve_filters(filters):
        result = item(text)
        if result != text:
            report.per_filter[item.name] = report.per_filter.get(item.name, 0) + 1
            report.chars_changed += abs(len(text) - len(result))
            if item.name in PARAGRAPH_FILTERS:
                report.paragraphs_removed += count_paragraphs(text) - count_paragraphs(result)
        else:
            report.per_filter.setdefault(item.name, 0)
        text = result

    report.docs_out = 1 if text else 0
    return doc.copy(text=text), report


def filter_corpus(docs, filters):
    """Filter a document stream, dropping documents left empty.

    Returns (kept stream, FilterReport); the report fills in as the stream is consumed.
    """
    resolved = resolve_filters(filters)
    report = FilterReport()
    return _filtered(docs, resolved, report), report


def _filtered(docs, filters, report):
    log = logger("filters")
    for doc in docs:
        filtered, doc_report = apply_pipeline(doc, filters)
        _update(report, doc_report)
        if not filtered.text:
            log.debug(f"Dropped document {doc.id}: empty after filtering")
            continue
        yield filtered


def _update(report, other):
    merged = report.merge(other)
    report.docs_in = merged.docs_in
    report.docs_out = merged.docs_out
    report.paragraphs_removed = merged.paragraphs_removed
    report.chars_changed = merged.chars_changed
    report.per_filter = merged.per_filter


def _entry_name(entry):
    return entry.get("name") if isinstance(entry, dict) else None
