"""Markdown structure outlines and structure comparison.

The outline keeps only structural elements (headings, code blocks, lists,
tables, links, ...) so a text and its translation can be compared without
looking at the words.
"""

import re
from dataclasses import dataclass, field
from itertools import zip_longest

import mistune

HTML_TAG = re.compile(r"<([A-Za-z][\w-]*)")
INLINE_STYLES = {
    "strong": "strong",
    "emphasis": "emphasis",
    "strikethrough": "strikethrough",
    "codespan": "code",
}

_parse = mistune.create_markdown(renderer=None, plugins=["table", "strikethrough", "math"])


@dataclass(frozen=True)
class OutlineElement:
    kind: str
    attrs: tuple = ()

    def __str__(self):
        if not self.attrs:
            return self.kind
        return f"{self.kind}({', '.join(f'{key}={value}' for key, value in self.attrs)})"


@dataclass
class FormatVerdict:
    verdict: str = "good"
    mismatches: list = field(default_factory=list)

    @property
    def good(self):
        return self.verdict == "good"


def markdown_outline(text):
    """Structural elements of a markdown text in document order."""
    elements = []
    _walk_blocks(_parse(text or ""), elements, list_depth=0, quote_depth=0)
    return elements


def markdown_match(original, translated):
    """GOOD only when both texts have exactly the same structural outline."""
    mismatches = []
    pairs = zip_longest(markdown_outline(original), markdown_outline(translated))
    for position, (expected, found) in enumerate(pairs):
        if expected != found:
            mismatches.append((position, str(expected) if expected else None, str(found) if found else None))
    return FormatVerdict(verdict="bad" if mismatches else "good", mismatches=mismatches)


def _element(kind, **attrs):
    return OutlineElement(kind, tuple(sorted(attrs.items())))


def _walk_blocks(tokens, elements, list_depth, quote_depth):
    for token in tokens:
        kind = token["type"]
        attrs = token.get("attrs") or {}

        if kind == "heading":
            elements.append(_element("heading", level=attrs.get("level", 1)))
            _inline_elements(token.get("children", []), elements)
        elif kind == "paragraph":
            elements.append(_element("paragraph_break"))
            _inline_elements(token.get("children", []), elements)
        elif kind == "block_text":
            _inline_elements(token.get("children", []), elements)
        elif kind == "block_code":
            info = (attrs.get("info") or "").split()
            language = info[0] if info else ""
            elements.append(_element("code_fence", language=language, fenced=token.get("style") == "fenced"))
        elif kind == "list":
            items = token.get("children", [])
            ordered = bool(attrs.get("ordered"))
            elements.append(_element("list", ordered=ordered, depth=list_depth, items=len(items)))
            for item in items:
                _walk_blocks(item.get("children", []), elements, list_depth + 1, quote_depth)
        elif kind == "block_quote":
            elements.append(_element("blockquote", depth=quote_depth + 1))
            _walk_blocks(token.get("children", []), elements, list_depth, quote_depth + 1)
        elif kind == "table":
            elements.append(_table_element(token))
            for part in token.get("children", []):
                _inline_elements(_table_cells(part), elements)
        elif kind == "block_math":
            elements.append(_element("math", display=True))
        elif kind == "block_html":
            elements.extend(_html_tags(token.get("raw", "")))
        elif kind == "thematic_break":
            elements.append(_element("horizontal_rule"))
        elif token.get("children"):
            _walk_blocks(token["children"], elements, list_depth, quote_depth)


def _inline_elements(tokens, elements):
    styles = {}
    _walk_inline(tokens, elements, styles)
    if styles:
        elements.append(_element("inline_styles", **styles))


def _walk_inline(tokens, elements, styles):
    for token in tokens:
        kind = token["type"]
        attrs = token.get("attrs") or {}
        if kind == "link":
            elements.append(_element("link", url=attrs.get("url", "").strip()))
        elif kind == "image":
            elements.append(_element("image", url=attrs.get("url", "").strip()))
        elif kind == "inline_math":
            elements.append(_element("math", display=False))
        elif kind == "inline_html":
            elements.extend(_html_tags(token.get("raw", "")))
        elif kind in INLINE_STYLES:
            name = INLINE_STYLES[kind]
            styles[name] = styles.get(name, 0) + 1
        if token.get("children"):
            _walk_inline(token["children"], elements, styles)


def _table_element(token):
    head = [part for part in token.get("children", []) if part["type"] == "table_head"]
    body = [part for part in token.get("children", []) if part["type"] == "table_body"]
    rows = [row for part in body for row in part.get("children", [])]
    header_row = head[0] if head else rows[0] if rows else {}
    cols = len(header_row.get("children", []))
    return _element("table", rows=len(rows), cols=cols, header=bool(head))


def _table_cells(part):
    if part["type"] == "table_head":
        return part.get("children", [])
    return [cell for row in part.get("children", []) for cell in row.get("children", [])]


def _html_tags(raw):
    return [_element("html_tag", name=name.lower()) for name in HTML_TAG.findall(raw)]
