"""Splitting documents into subdocuments that fit one training example."""

from dataclasses import dataclass, field

from corpus_prep.core.tokenizer import TokenizerInterface
from corpus_prep.core.units import split_units
from corpus_prep.exceptions import ConfigurationError, ValidationError
from corpus_prep.utils import throw

MIN_CONTEXT_LENGTH = 8
CUTS = ("end", "unit", "hard")


@dataclass(frozen=True)
class SourceSpan:
    """Where a subdocument comes from.

    Units [unit_start, unit_end) and tokens [token_start, token_end) of the
    document's token stream; `cut` says how the span ends: at the end of the
    document, at a unit boundary, or in the middle of an oversized unit.
    """

    doc_id: str
    unit_start: int
    unit_end: int
    token_start: int
    token_end: int
    cut: str = "end"

    def __post_init__(self):
        if self.cut not in CUTS:
            raise ValidationError(f"Unknown cut kind: {self.cut}")

    @property
    def length(self):
        return self.token_end - self.token_start

    def as_record(self):
        return {
            "doc_id": self.doc_id,
            "units": [self.unit_start, self.unit_end],
            "tokens": [self.token_start, self.token_end],
            "cut": self.cut,
        }

    @classmethod
    def from_record(cls, record):
        return cls(
            doc_id=record["doc_id"],
            unit_start=record["units"][0],
            unit_end=record["units"][1],
            token_start=record["tokens"][0],
            token_end=record["tokens"][1],
            cut=record.get("cut", "end"),
        )


@dataclass
class Subdocument:
    token_ids: list
    source_ids: list = field(default_factory=list)

    @property
    def length(self):
        return len(self.token_ids)

    def sort_key(self):
        first = self.source_ids[0] if self.source_ids else None
        return (-self.length, first.doc_id if first else "", first.token_start if first else 0)


def capacity_for(context_length):
    """Content tokens available to one member: room for BOS and its EOS separator removed."""
    if context_length < MIN_CONTEXT_LENGTH:
        throw(
            f"context_length must be at least {MIN_CONTEXT_LENGTH}, got {context_length}",
            ConfigurationError,
        )
    return context_length - 2


def check_tokenizer(tokenizer):
    if not isinstance(tokenizer, TokenizerInterface):
        throw(f"{tokenizer!r} does not implement the tokenizer interface", ConfigurationError)
    if tokenizer.bos_id == tokenizer.eos_id:
        throw("Tokenizer BOS and EOS ids must differ", ConfigurationError)


def document_tokens(doc, tokenizer, capacity, strategy="paragraph"):
    """Token stream of a document plus the token offset where each unit starts.

    A document that fits is encoded whole (offsets are None); a longer one is
    encoded unit by unit, each unit together with the separator that follows it.
    """
    token_ids = tokenizer.encode(doc.text) if doc.text else []
    if len(token_ids) <= capacity:
        return token_ids, None

    token_ids = []
    offsets = []
    for unit in split_units(doc, strategy):
        offsets.append(len(token_ids))
        token_ids.extend(tokenizer.encode(unit.text + unit.joiner))
    return token_ids, offsets


def make_subdocuments(doc, context_length, tokenizer, strategy="paragraph"):
    """Split a document into subdocuments of at most capacity tokens.

    Consecutive units are merged greedily; a unit longer than capacity is
    hard-split at capacity boundaries and its remainder may merge with the
    units after it. Empty documents give no subdocument.
    """
    capacity = capacity_for(context_length)
    check_tokenizer(tokenizer)
    token_ids, offsets = document_tokens(doc, tokenizer, capacity, strategy)
    if not token_ids:
        return []
    if offsets is None:
        return [Subdocument(list(token_ids), [SourceSpan(doc.id, 0, 1, 0, len(token_ids), "end")])]

    bounds = offsets + [len(token_ids)]
    subdocs = []
    start = 0
    first_unit = 0

    def emit(end, last_unit, cut):
        span = SourceSpan(doc.id, first_unit, last_unit + 1, start, end, cut)
        subdocs.append(Subdocument(token_ids[start:end], [span]))

    for i in range(len(offsets)):
        unit_end = bounds[i + 1]
        if unit_end - start <= capacity:
            continue
        if bounds[i] > start:
            # close the merged run before the unit that does not fit
            emit(bounds[i], i - 1, "unit")
            start = bounds[i]
            first_unit = i
        while unit_end - start > capacity:
            emit(start + capacity, i, "hard")
            start += capacity
            first_unit = i

    emit(len(token_ids), len(offsets) - 1, "end")
    return subdocs
