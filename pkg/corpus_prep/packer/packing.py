"""First-fit-decreasing packing of subdocuments into fixed-length examples."""

from dataclasses import dataclass, field

from corpus_prep.core.records import read_jsonl
from corpus_prep.exceptions import RecordParseError
from corpus_prep.packer.subdocuments import SourceSpan, capacity_for, check_tokenizer, make_subdocuments
from corpus_prep.utils import logger


@dataclass
class PackedExample:
    """One training example: BOS, members each followed by EOS, then EOS padding."""

    token_ids: list
    content_len: int
    members: list = field(default_factory=list)

    def as_record(self):
        return {
            "token_ids": list(self.token_ids),
            "content_len": self.content_len,
            "members": [member.as_record() for member in self.members],
        }

    @classmethod
    def from_record(cls, record, line_number=None):
        try:
            return cls(
                token_ids=list(record["token_ids"]),
                content_len=int(record["content_len"]),
                members=[SourceSpan.from_record(member) for member in record.get("members", [])],
            )
        except (KeyError, IndexError, TypeError, ValueError) as e:
            raise RecordParseError(f"Invalid packed example record: {e}", line_number=line_number)


@dataclass
class PackSummary:
    documents: int = 0
    empty_documents: int = 0
    split_documents: int = 0
    subdocuments: int = 0
    examples: int = 0
    content_tokens: int = 0
    padding_tokens: int = 0

    @property
    def efficiency(self):
        total = self.content_tokens + self.padding_tokens
        return self.content_tokens / total if total else 0.0

    def as_dict(self):
        return {
            "documents": self.documents,
            "empty_documents": self.empty_documents,
            "split_documents": self.split_documents,
            "subdocuments": self.subdocuments,
            "examples": self.examples,
            "content_tokens": self.content_tokens,
            "padding_tokens": self.padding_tokens,
            "efficiency": round(self.efficiency, 4),
        }


def pack(subdocs, context_length, tokenizer):
    """Pack subdocuments first-fit-decreasing into examples of exactly context_length tokens.

    Subdocuments are placed longest first (ties by source document id, then
    token offset) into the first example with room for the member and its
    EOS separator.
    """
    capacity_for(context_length)
    check_tokenizer(tokenizer)
    room = context_length - 1

    bins = []
    for subdoc in sorted(subdocs, key=lambda s: s.sort_key()):
        needed = subdoc.length + 1
        for packed in bins:
            if packed[0] >= needed:
                packed[0] -= needed
                packed[1].append(subdoc)
                break
        else:
            bins.append([room - needed, [subdoc]])

    return [_build_example(members, context_length, tokenizer) for _, members in bins]


def pack_corpus(docs, context_length, tokenizer, strategy="paragraph"):
    """Split, merge and pack a document stream; returns (examples, PackSummary)."""
    log = logger("packer")
    summary = PackSummary()
    subdocs = []
    for doc in docs:
        summary.documents += 1
        pieces = make_subdocuments(doc, context_length, tokenizer, strategy)
        if not pieces:
            summary.empty_documents += 1
            log.debug(f"Skipped empty document {doc.id}")
            continue
        if len(pieces) > 1:
            summary.split_documents += 1
        subdocs.extend(pieces)

    examples = pack(subdocs, context_length, tokenizer)
    summary.subdocuments = len(subdocs)
    summary.examples = len(examples)
    summary.content_tokens = sum(subdoc.length for subdoc in subdocs)
    summary.padding_tokens = sum(context_length - example.content_len for example in examples)
    return examples, summary


def _build_example(members, context_length, tokenizer):
    token_ids = [tokenizer.bos_id]
    spans = []
    for subdoc in members:
        token_ids.extend(subdoc.token_ids)
        token_ids.append(tokenizer.eos_id)
        spans.extend(subdoc.source_ids)
    content_len = len(token_ids)
    token_ids.extend([tokenizer.eos_id] * (context_length - content_len))
    return PackedExample(token_ids=token_ids, content_len=content_len, members=spans)


def read_examples(path):
    """Stream PackedExamples from a packed record file."""
    for line_number, row in read_jsonl(path):
        yield PackedExample.from_record(row, line_number=line_number)
