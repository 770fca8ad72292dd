"""Text-cleaning filters and the filter pipeline."""

from corpus_prep.filters.pipeline import (
    FilterReport,
    apply_pipeline,
    filter_corpus,
    filter_names,
    load_filter_config,
    resolve_filters,
)
from corpus_prep.filters.text_filters import (
    collapse_repeated_paragraphs,
    correct_diacritics,
    filter_long_paragraphs,
    normalize_newlines,
    reformat_unicode,
    remove_images,
)
