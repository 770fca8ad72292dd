"""Checks packed examples against their layout rules and the source corpus."""

from collections import defaultdict
from dataclasses import dataclass, field

from corpus_prep.packer.subdocuments import capacity_for, document_tokens


@dataclass
class PackReport:
    examples: int = 0
    documents: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, violation, example=None, detail=""):
        self.violations.append({"example": example, "violation": violation, "detail": detail})

    def as_dict(self):
        return {"examples": self.examples, "documents": self.documents, "violations": list(self.violations)}


def verify_pack(examples, docs, tokenizer, strategy="paragraph", context_length=None):
    """Report every layout, conservation and fragment-boundary violation.

    `context_length` defaults to the longest example seen.
    """
    examples = list(examples)
    report = PackReport(examples=len(examples))
    if context_length is None:
        context_length = max((len(example.token_ids) for example in examples), default=0)
    if not examples and not context_length:
        context_length = 8
    capacity = capacity_for(context_length)

    streams = {}
    for doc in docs:
        report.documents += 1
        token_ids, offsets = document_tokens(doc, tokenizer, capacity, strategy)
        streams[doc.id] = (token_ids, set(offsets or []))

    spans = defaultdict(list)
    for i, example in enumerate(examples):
        _check_layout(report, i, example, context_length, tokenizer, streams)
        for member in example.members:
            spans[member.doc_id].append(member)

    for doc_id, (token_ids, unit_starts) in streams.items():
        _check_tiling(report, doc_id, token_ids, unit_starts, spans.pop(doc_id, []), capacity)
    for doc_id in spans:
        report.add("unknown document", detail=f"members reference {doc_id}, which is not in the corpus")
    return report


def _check_layout(report, i, example, context_length, tokenizer, streams):
    token_ids = example.token_ids
    if len(token_ids) != context_length:
        report.add("length", i, f"{len(token_ids)} tokens, expected {context_length}")
    if not token_ids or token_ids[0] != tokenizer.bos_id:
        report.add("missing BOS", i)
    if tokenizer.bos_id in token_ids[1:]:
        report.add("BOS inside example", i, f"at position {token_ids.index(tokenizer.bos_id, 1)}")

    position = 1
    for member in example.members:
        end = position + member.length
        if end >= len(token_ids):
            report.add("member overflow", i, f"{member.doc_id} runs past the end of the example")
            return
        stream = streams.get(member.doc_id, ([], set()))[0]
        if token_ids[position:end] != stream[member.token_start : member.token_end]:
            report.add("content", i, f"tokens of {member.doc_id} [{member.token_start}, {member.token_end})")
        if token_ids[end] != tokenizer.eos_id:
            report.add("separator", i, f"no EOS after {member.doc_id} at position {end}")
        position = end + 1

    if example.content_len != position:
        report.add("content_len", i, f"declared {example.content_len}, members end at {position}")
    if any(token != tokenizer.eos_id for token in token_ids[position:]):
        report.add("padding", i, "non-EOS token after the last member")


def _check_tiling(report, doc_id, token_ids, unit_starts, members, capacity):
    if not token_ids:
        if members:
            report.add("conservation", detail=f"{doc_id} is empty but has packed members")
        return
    if not members:
        report.add("conservation", detail=f"{doc_id} is missing from the packed examples")
        return

    members.sort(key=lambda m: m.token_start)
    expected = 0
    for member in members:
        end = member.token_end
        if member.token_start != expected:
            gap = f"[{expected}, {member.token_start})"
            report.add("conservation", detail=f"{doc_id}: tokens {gap} not covered")
        expected = end
        last = end == len(token_ids)
        if last and member.cut != "end":
            report.add("fragment boundary", detail=f"{doc_id}: final fragment is marked {member.cut!r}")
        elif not last and member.cut == "end":
            report.add("fragment boundary", detail=f"{doc_id}: fragment ends at {end} marked 'end'")
        elif member.cut == "unit" and end not in unit_starts:
            report.add("fragment boundary", detail=f"{doc_id}: cut at {end} is not a unit boundary")
        elif member.cut == "hard" and member.length != capacity:
            report.add("fragment boundary", detail=f"{doc_id}: hard split of {member.length} tokens")
    if expected != len(token_ids):
        report.add("conservation", detail=f"{doc_id}: covered {expected} of {len(token_ids)} tokens")
