"""Parallel document pairs and their loaders."""

from dataclasses import dataclass

from corpus_prep.core.records import document_from_row, read_jsonl, read_records
from corpus_prep.exceptions import AlignmentError, RecordParseError
from corpus_prep.utils import log_error, throw


@dataclass
class ParallelPair:
    """The same document in two languages."""

    src: object
    tgt: object
    pair_id: str

    def validate(self):
        """Validate the pair."""
        self.validate_pair_id()
        self.validate_languages()
        return self

    def validate_pair_id(self):
        if not isinstance(self.pair_id, str) or not self.pair_id:
            throw("Parallel pair id must be a non-empty string", AlignmentError)

    def validate_languages(self):
        """Both sides must be in different languages."""
        self.src.validate()
        self.tgt.validate()
        if self.src.lang == self.tgt.lang:
            throw(f"Pair {self.pair_id}: both sides are in language {self.src.lang!r}", AlignmentError)


def load_pairs(path):
    """Stream pairs from a file of {pair_id, src, tgt} records."""
    for line_number, row in read_jsonl(path):
        if not isinstance(row, dict) or "src" not in row or "tgt" not in row:
            message = f"{path}:{line_number}: pair record needs 'src' and 'tgt'"
            raise RecordParseError(message, line_number=line_number)
        src = document_from_row(row["src"], line_number)
        tgt = document_from_row(row["tgt"], line_number)
        pair_id = row.get("pair_id") or src.meta.get("pair_id") or src.id
        yield ParallelPair(src=src, tgt=tgt, pair_id=pair_id).validate()


def join_pairs(src_docs, tgt_docs, key="pair_id"):
    """Pair two document streams on a meta key, in source order.

    Documents without a partner are logged and skipped.
    """
    targets = {}
    for doc in tgt_docs:
        pair_id = doc.meta.get(key)
        if pair_id is None:
            log_error(f"Target document {doc.id} has no '{key}' meta", "align")
            continue
        if pair_id in targets:
            throw(f"Duplicate target for pair {pair_id}", AlignmentError)
        targets[pair_id] = doc

    seen = set()
    for doc in src_docs:
        pair_id = doc.meta.get(key)
        if pair_id is None or pair_id not in targets:
            log_error(f"Source document {doc.id} has no target partner", "align")
            continue
        if pair_id in seen:
            throw(f"Duplicate source for pair {pair_id}", AlignmentError)
        seen.add(pair_id)
        yield ParallelPair(src=doc, tgt=targets[pair_id], pair_id=pair_id).validate()

    for pair_id in targets.keys() - seen:
        log_error(f"Target document {targets[pair_id].id} has no source partner", "align")


def load_joined_pairs(src_path, tgt_path, key="pair_id"):
    """Pair two record files on a meta key."""
    return join_pairs(read_records(src_path), read_records(tgt_path), key=key)
