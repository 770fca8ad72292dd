"""Rule-based page classification and boundary merge decisions."""

import re

from corpus_prep.exceptions import ContractError
from corpus_prep.pagemerge.pages import MergeAction
from corpus_prep.utils import throw

MIN_CONTENT_CHARS = 25
MIN_ALNUM_RATIO = 0.2
RUNNING_LINE_PAGES = 3

ROMAN = r"M{0,3}(?:CM|CD|D?C{0,3})(?:XC|XL|L?X{0,3})(?:IX|IV|V?I{0,3})"
ROMAN_DECORATION = r"[-–—\[\]()|]"

PAGE_NUMBER_PATTERNS = (
    # decorated digits: "14", "- 14 -", "— 14 —", "[14]"
    re.compile(r"[^\w\s]*\s*\d{1,4}\s*[^\w\s]*"),
    re.compile(r"(?:stran|str\.|page|p\.)\s*\d{1,4}(?:\s*(?:/|od|of)\s*\d{1,4})?\.?", re.IGNORECASE),
    # bare roman numerals are uppercase and at least two letters long: "XIV", not "I" or "Mix"
    re.compile(rf"(?=[MDCLXVI]{{2,}}$){ROMAN}"),
    # either case once dashes or brackets surround it: "— ix —", "[I]"
    re.compile(rf"{ROMAN_DECORATION}+\s*(?i:{ROMAN})\s*{ROMAN_DECORATION}+"),
)
SENTENCE_FINAL = frozenset('.!?:"”»“…')
HYPHENATED_END = re.compile(r"[^\W\d_]-$")


def is_page_number(text):
    stripped = text.strip()
    if not stripped or not any(ch.isalnum() for ch in stripped):
        return False
    return any(pattern.fullmatch(stripped) for pattern in PAGE_NUMBER_PATTERNS)


def running_lines(pages, min_pages=RUNNING_LINE_PAGES):
    """Lines repeated verbatim on at least `min_pages` consecutive pages."""
    found = set()
    streak = {}
    for page in pages:
        lines = {line.strip() for line in page.text.splitlines() if line.strip()}
        streak = {line: streak.get(line, 0) + 1 for line in lines}
        found.update(line for line, count in streak.items() if count >= min_pages)
    return frozenset(found)


def is_running_text(text, running=frozenset()):
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    return bool(lines) and all(line in running for line in lines)


def classify_page(page, running=frozenset()):
    """Label a page 'boilerplate' or 'content' from local features and running lines."""
    stripped = page.text.strip()
    if len(stripped) < MIN_CONTENT_CHARS:
        return "boilerplate"
    visible = [ch for ch in stripped if not ch.isspace()]
    if sum(ch.isalnum() for ch in visible) / len(visible) < MIN_ALNUM_RATIO:
        return "boilerplate"
    if is_page_number(stripped) or is_running_text(stripped, running):
        return "boilerplate"
    return "content"


def decide_merge(last_par, first_par, running=frozenset()):
    """Decide how the last paragraph of one page meets the first paragraph of the next."""
    if not last_par.strip() or not first_par.strip():
        throw("decide_merge needs two non-empty paragraphs", ContractError)
    last = last_par.rstrip()
    first = first_par.lstrip()

    if is_page_number(last) or is_running_text(last, running):
        return MergeAction.DROP_FOOTER
    if is_page_number(first) or is_running_text(first, running):
        return MergeAction.DROP_HEADER
    starts_lower = first[0].islower()
    if starts_lower and HYPHENATED_END.search(last):
        return MergeAction.JOIN_HYPHENATED
    if starts_lower and last[-1] not in SENTENCE_FINAL:
        return MergeAction.JOIN_SAME_PARAGRAPH
    return MergeAction.SEPARATE
