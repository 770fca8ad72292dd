"""Text-cleaning filters.

Every filter is a pure `text -> text` function and is idempotent:
f(f(text)) == f(text).
"""

import functools
import re
import unicodedata

from corpus_prep.core.units import join_paragraphs, split_paragraphs
from corpus_prep.exceptions import ConfigurationError
from corpus_prep.utils import throw

IMAGE_PATTERN = re.compile(r"!\[[^\]\n]*\]\([^)\n]*\)")
NEWLINE_RUN = re.compile(r"\n{3,}")
SPACING_CARON = "\u02c7"
CARON_PATTERN = re.compile(f"{SPACING_CARON}([csz])|([csz]){SPACING_CARON}", re.IGNORECASE)

# Letters whose UTF-8 bytes are commonly misdecoded by OCR and scraping tools
MOJIBAKE_LETTERS = "čšžćđČŠŽĆĐáàâäãåéèêëíìîïóòôöõúùûüýñçßÁÀÂÄÉÈÊËÍÎÓÔÖÚÜÝÑÇ"
MOJIBAKE_CODECS = ("latin-1", "cp1252", "cp1250")

MAX_PASSES = 8


def _default_mojibake():
    table = {}
    for letter in MOJIBAKE_LETTERS:
        raw = letter.encode("utf-8")
        for codec in MOJIBAKE_CODECS:
            try:
                garbled = raw.decode(codec)
            except UnicodeDecodeError:
                continue
            if garbled != letter:
                table.setdefault(garbled, letter)
    return table


DEFAULT_MOJIBAKE = _default_mojibake()
DEFAULT_MOJIBAKE_ITEMS = tuple(sorted(DEFAULT_MOJIBAKE.items()))


def remove_images(text):
    """Remove markdown embedded images `![alt](url)`."""
    while True:
        cleaned = IMAGE_PATTERN.sub("", text)
        if cleaned == text:
            return cleaned
        text = cleaned


def normalize_newlines(text):
    """Truncate runs of newlines to at most two."""
    return NEWLINE_RUN.sub("\n\n", text)


def reformat_unicode(text, mojibake=None):
    """Repair known mojibake sequences and normalize to NFC.

    `mojibake` extends the default table with extra {garbled: intended} entries.
    """
    items = _freeze({**DEFAULT_MOJIBAKE, **mojibake}) if mojibake else DEFAULT_MOJIBAKE_ITEMS
    pattern, table = _replacement_table(items)
    for _ in range(MAX_PASSES):
        fixed = unicodedata.normalize("NFC", _replace_all(pattern, table, text))
        if fixed == text:
            break
        text = fixed
    return text


def correct_diacritics(text, diacritics=None):
    """Collapse a spacing caron next to c, s or z into č, š or ž."""
    if diacritics:
        pattern, table = _replacement_table(_freeze(diacritics))
        text = _replace_all(pattern, table, text)
    text = CARON_PATTERN.sub(_caron_letter, text)
    return unicodedata.normalize("NFC", text)


def filter_long_paragraphs(text, max_chars=15000):
    """Drop paragraphs longer than `max_chars` characters."""
    if max_chars <= 0:
        throw("max_chars must be positive", ConfigurationError)
    paragraphs, separators = split_paragraphs(text)
    keep = [len(paragraph) <= max_chars for paragraph in paragraphs]
    return _keep_paragraphs(paragraphs, separators, keep)


def collapse_repeated_paragraphs(text, max_repeats=100):
    """Keep only the first occurrence of a paragraph repeated more than `max_repeats` times."""
    if max_repeats <= 0:
        throw("max_repeats must be positive", ConfigurationError)
    paragraphs, separators = split_paragraphs(text)

    counts = {}
    for paragraph in paragraphs:
        if paragraph.strip():
            counts[paragraph] = counts.get(paragraph, 0) + 1

    seen = set()
    keep = []
    for paragraph in paragraphs:
        if counts.get(paragraph, 0) > max_repeats and paragraph in seen:
            keep.append(False)
            continue
        seen.add(paragraph)
        keep.append(True)
    return _keep_paragraphs(paragraphs, separators, keep)


def count_paragraphs(text):
    """Number of non-blank paragraphs."""
    paragraphs, _ = split_paragraphs(text)
    return sum(1 for paragraph in paragraphs if paragraph.strip())


def _keep_paragraphs(paragraphs, separators, keep):
    # a dropped paragraph takes the separator before it (or after it, when first)
    if all(keep):
        return join_paragraphs(paragraphs, separators)
    kept = [i for i, flag in enumerate(keep) if flag]
    if not kept:
        return ""
    pieces = [paragraphs[kept[0]]]
    for i in kept[1:]:
        pieces.append(separators[i - 1])
        pieces.append(paragraphs[i])
    return "".join(pieces)


def _caron_letter(match):
    letter = match.group(1) or match.group(2)
    return unicodedata.normalize("NFC", letter + "\u030c")


def _freeze(mapping):
    return tuple(sorted(mapping.items()))


@functools.lru_cache(maxsize=32)
def _replacement_table(items):
    table = dict(items)
    # longest keys first so overlapping sequences resolve to the longer match
    keys = sorted(table, key=len, reverse=True)
    pattern = re.compile("|".join(re.escape(key) for key in keys)) if keys else None
    return pattern, table


def _replace_all(pattern, table, text):
    if pattern is None:
        return text
    return pattern.sub(lambda m: table[m.group(0)], text)
