"""Language detector interface and a stopword-count demo detector.

StopwordDetector only tells Slovene from English on ordinary prose. It exists
to exercise the language-error metric, not to identify languages reliably.
"""

import re
from typing import Protocol, runtime_checkable

from corpus_prep import hooks
from corpus_prep.exceptions import ConfigurationError
from corpus_prep.utils import get_attr, throw

WORD = re.compile(r"[^\W\d_]+")

STOPWORDS = {
    "sl": frozenset(
        "in je da se na v za so ki z s ne pa bi kot to tudi pri ali ko sem smo ste od do po iz "
        "kaj kako ker če še že lahko zelo kar ta te tega tem".split()
    ),
    "en": frozenset(
        "the and of to a in is that it for on with as was are be by this from or at an "
        "which have not were has they their but can will".split()
    ),
}


@runtime_checkable
class LanguageDetector(Protocol):
    def detect(self, text: str) -> str: ...


class StopwordDetector:
    """Picks the language whose stopwords occur most often; '' when none occur."""

    def __init__(self, stopwords=None):
        self.stopwords = stopwords or STOPWORDS

    def detect(self, text):
        words = [word.lower() for word in WORD.findall(text)]
        hits = {lang: sum(word in stops for word in words) for lang, stops in self.stopwords.items()}
        best = max(sorted(hits), key=lambda lang: hits[lang], default="")
        return best if best and hits[best] else ""


def load_language_detector(name):
    if name not in hooks.language_detectors:
        throw(f"Unknown language detector: {name}", ConfigurationError)
    return get_attr(hooks.language_detectors[name])()
