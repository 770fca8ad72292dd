"""OCR pages and merge-log records."""

from dataclasses import dataclass
from enum import Enum

from corpus_prep.core.records import read_jsonl
from corpus_prep.exceptions import RecordParseError, ValidationError
from corpus_prep.utils import throw

PAGE_LABELS = ("content", "boilerplate", "unlabeled")


class MergeAction(str, Enum):
    DROP_FOOTER = "drop_footer"
    DROP_HEADER = "drop_header"
    JOIN_HYPHENATED = "join_hyphenated"
    JOIN_SAME_PARAGRAPH = "join_same_paragraph"
    SEPARATE = "separate"


@dataclass
class Page:
    """One OCR-transcribed page of a document."""

    index: int
    text: str
    label: str = "unlabeled"
    doc_id: str = ""

    def validate(self):
        """Validate page fields."""
        if not isinstance(self.index, int) or self.index < 0:
            throw(f"Page index must be a nonnegative integer, got {self.index!r}")
        if not isinstance(self.text, str):
            throw(f"Page {self.index}: text must be a string")
        if self.label not in PAGE_LABELS:
            throw(f"Page {self.index}: unknown label {self.label!r}")
        return self


@dataclass(frozen=True)
class MergeLogEntry:
    doc_id: str
    left: int
    right: int
    action: str

    def as_record(self):
        return {"doc_id": self.doc_id, "left": self.left, "right": self.right, "action": self.action}


def validate_pages(pages):
    """Pages must be valid and their indices strictly increasing."""
    previous = None
    for page in pages:
        page.validate()
        if previous is not None and page.index <= previous:
            throw(f"Page indices must be strictly increasing: {page.index} follows {previous}")
        previous = page.index
    return pages


def group_pages(records):
    """Group page records {doc_id, page_index, text} by document, pages ordered by index.

    Documents keep the order of their first page record; a repeated page
    index within a document is an error.
    """
    documents = {}
    for line_number, record in enumerate(records, start=1):
        try:
            page = Page(
                index=record["page_index"],
                text=record["text"],
                label=record.get("label") or "unlabeled",
                doc_id=record["doc_id"],
            )
        except (KeyError, TypeError) as e:
            raise RecordParseError(f"Page record {line_number}: missing field {e}", line_number=line_number)
        documents.setdefault(page.doc_id, []).append(page)

    for doc_id, pages in documents.items():
        pages.sort(key=lambda p: p.index)
        try:
            validate_pages(pages)
        except ValidationError as e:
            throw(f"Document {doc_id}: {e}")
    return documents


def read_pages(path):
    """Group the page records of a line-record file."""
    return group_pages(record for _, record in read_jsonl(path))
