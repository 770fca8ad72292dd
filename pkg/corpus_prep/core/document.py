"""Document and Unit records."""

import re
from dataclasses import dataclass, field

from corpus_prep.exceptions import ValidationError
from corpus_prep.utils import throw

LANG_PATTERN = re.compile(r"[a-z]{2}")
UNIT_KINDS = ("sentence", "paragraph", "section")


@dataclass
class Document:
    """One text record flowing through every pipeline stage."""

    id: str
    text: str
    lang: str = ""
    meta: dict = field(default_factory=dict)

    def validate(self):
        """Validate document fields."""
        self.validate_id()
        self.validate_text()
        self.validate_lang()
        self.validate_meta()
        return self

    def validate_id(self):
        """The id must be a non-empty string."""
        if not isinstance(self.id, str) or not self.id:
            throw("Document id must be a non-empty string")

    def validate_text(self):
        """The text must be encodable as UTF-8 (no lone surrogates)."""
        if not isinstance(self.text, str):
            throw(f"Document {self.id}: text must be a string")
        try:
            self.text.encode("utf-8")
        except UnicodeEncodeError as e:
            throw(f"Document {self.id}: text is not valid unicode ({e.reason} at {e.start})")

    def validate_lang(self):
        """The language tag is empty or two lowercase letters."""
        if self.lang and not LANG_PATTERN.fullmatch(self.lang):
            throw(f"Document {self.id}: invalid language code {self.lang!r}")

    def validate_meta(self):
        """Meta is a flat string-to-string map."""
        if not isinstance(self.meta, dict):
            throw(f"Document {self.id}: meta must be a map")
        for key, value in self.meta.items():
            if not isinstance(key, str) or not isinstance(value, str):
                throw(f"Document {self.id}: meta entry {key!r} must map a string to a string")

    def copy(self, **changes):
        """Return a copy with `changes` applied; meta is copied, never shared."""
        values = {"id": self.id, "text": self.text, "lang": self.lang, "meta": dict(self.meta)}
        values.update(changes)
        return Document(**values)


@dataclass(frozen=True)
class Unit:
    """A contiguous piece of a document produced by split_units.

    `joiner` is the exact separator text that followed the unit in its source,
    so that join_units reconstructs the original text.
    """

    text: str
    kind: str
    source_id: str
    ordinal: int
    joiner: str = ""

    def __post_init__(self):
        if self.kind not in UNIT_KINDS:
            raise ValidationError(f"Unknown unit kind: {self.kind}")
        if self.ordinal < 0:
            raise ValidationError("Unit ordinal must be nonnegative")
