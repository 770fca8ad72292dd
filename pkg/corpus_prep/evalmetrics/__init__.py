"""Translation quality metrics and the markdown structure judge."""

from corpus_prep.evalmetrics.langdetect import LanguageDetector, StopwordDetector
from corpus_prep.evalmetrics.markdown import FormatVerdict, markdown_match, markdown_outline
from corpus_prep.evalmetrics.translation import (
    EvalReport,
    TranslationPair,
    eval_translations,
    length_ratio_filter,
    length_ratio_keep,
    truncation_flag,
)
