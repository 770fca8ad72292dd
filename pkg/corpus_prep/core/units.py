"""Splitting documents into sentence, paragraph or section units.

Every unit keeps the separator that followed it (`joiner`), so
join_units(split_units(doc, s)) == doc.text for every strategy.
"""

import re

from corpus_prep.core.document import UNIT_KINDS, Unit
from corpus_prep.exceptions import ConfigurationError
from corpus_prep.utils import throw

# A blank line: a newline followed by one or more whitespace-only lines.
PARAGRAPH_SEPARATOR = re.compile(r"\n(?:[ \t]*\n)+")
SECTION_START = re.compile(r"^#", re.MULTILINE)
SENTENCE_END = re.compile(r"([.?!])(\s+)(?=(\w))")

DEFAULT_ABBREVIATIONS = frozenset(
    {
        # English
        "dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr", "vs", "no", "vol", "fig", "e.g", "i.e", "cf",
        # Slovene
        "ga", "g", "gos", "mag", "doc", "dipl", "ing", "npr", "oz", "tj", "ipd", "sv", "str", "št", "t.i",
    }
)


def split_paragraphs(text):
    """Split text on blank lines; returns (paragraphs, separators), one separator fewer than paragraphs."""
    parts = PARAGRAPH_SEPARATOR.split(text)
    separators = PARAGRAPH_SEPARATOR.findall(text)
    return parts, separators


def join_paragraphs(paragraphs, separators):
    """Inverse of split_paragraphs."""
    pieces = []
    for i, paragraph in enumerate(paragraphs):
        pieces.append(paragraph)
        if i < len(separators):
            pieces.append(separators[i])
    return "".join(pieces)


def split_units(doc, strategy="paragraph", abbreviations=None):
    """Split a document into ordered units using the given strategy."""
    if strategy not in UNIT_KINDS:
        throw(f"Unknown split strategy: {strategy}", ConfigurationError)
    if not doc.text:
        return []

    if strategy == "paragraph":
        pieces = _paragraph_pieces(doc.text)
    elif strategy == "section":
        pieces = _section_pieces(doc.text)
    else:
        pieces = _sentence_pieces(doc.text, DEFAULT_ABBREVIATIONS if abbreviations is None else abbreviations)

    return [
        Unit(text=text, kind=strategy, source_id=doc.id, ordinal=i, joiner=joiner)
        for i, (text, joiner) in enumerate(pieces)
    ]


def join_units(units):
    """Reconstruct the source text from its units."""
    return "".join(unit.text + unit.joiner for unit in sorted(units, key=lambda u: u.ordinal))


def _paragraph_pieces(text):
    paragraphs, separators = split_paragraphs(text)
    return list(zip(paragraphs, [*separators, ""]))


def _section_pieces(text):
    starts = [m.start() for m in SECTION_START.finditer(text) if m.start() > 0]
    bounds = [0, *starts, len(text)]
    pieces = []
    for start, end in zip(bounds, bounds[1:]):
        chunk = text[start:end]
        body = chunk.rstrip("\n") if end < len(text) else chunk
        pieces.append((body, chunk[len(body):]))
    return pieces


def _sentence_pieces(text, abbreviations):
    pieces = []
    start = 0
    for m in SENTENCE_END.finditer(text):
        if not m.group(3).isupper():
            continue
        if m.group(1) == "." and _is_abbreviation(text[start : m.start(1)], abbreviations):
            continue
        pieces.append((text[start : m.end(1)], m.group(2)))
        start = m.end(2)
    pieces.append((text[start:], ""))
    return pieces


def _is_abbreviation(prefix, abbreviations):
    words = prefix.split()
    if not words:
        return False
    word = words[-1].lstrip("(\"'«»„“").lower()
    # single-letter initials ("J. Novak")
    if len(word) == 1 and word.isalpha():
        return True
    return word in abbreviations
