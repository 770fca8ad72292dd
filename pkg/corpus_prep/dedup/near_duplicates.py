"""Near-duplicate removal with MinHash LSH, optionally within meta groups."""

from dataclasses import dataclass, field

from corpus_prep.dedup.minhash import DEFAULT_NGRAM, LshIndex, estimate_jaccard, minhash, shingle
from corpus_prep.exceptions import ContractError
from corpus_prep.utils import logger, throw

UNGROUPED = "__ungrouped__"


@dataclass
class DedupReport:
    """Removed pairs and per-group counts, filled as the kept stream is consumed."""

    docs_in: int = 0
    docs_out: int = 0
    ungrouped: int = 0
    groups: dict = field(default_factory=dict)
    removed: list = field(default_factory=list)

    def count(self, group, kept):
        counts = self.groups.setdefault(group, {"docs_in": 0, "docs_out": 0})
        counts["docs_in"] += 1
        self.docs_in += 1
        if kept:
            counts["docs_out"] += 1
            self.docs_out += 1

    def as_dict(self):
        return {
            "docs_in": self.docs_in,
            "docs_out": self.docs_out,
            "removed": len(self.removed),
            "ungrouped": self.ungrouped,
            "groups": {group: dict(counts) for group, counts in self.groups.items()},
        }


def dedup_corpus(docs, threshold=0.65, n=DEFAULT_NGRAM, seed=1, group_by=None):
    """Drop documents that near-duplicate an earlier kept document.

    Returns (kept stream, DedupReport). A document is removed when an earlier
    kept document of the same group is an LSH candidate and the estimated
    Jaccard similarity reaches `threshold`; report.removed collects
    {kept_id, removed_id, estimate} records.
    """
    if not 0 < threshold < 1:
        throw("threshold must lie strictly between 0 and 1", ContractError)
    if n < 1:
        throw("n must be at least 1", ContractError)
    report = DedupReport()
    return _deduplicated(docs, threshold, n, seed, group_by, report), report


def _deduplicated(docs, threshold, n, seed, group_by, report):
    log = logger("dedup")
    indexes = {}
    kept_ids = {}

    for ordinal, doc in enumerate(docs):
        group = ""
        if group_by:
            group = doc.meta.get(group_by)
            if group is None:
                group = UNGROUPED
                report.ungrouped += 1
                log.debug(f"Document {doc.id} has no '{group_by}' meta; using {UNGROUPED}")
        index = indexes.setdefault(group, LshIndex())

        signature = minhash(shingle(doc.text, n), seed=seed)
        match = _best_match(index, signature, threshold)
        if match is None:
            index.insert(ordinal, signature)
            kept_ids[ordinal] = doc.id
            report.count(group, kept=True)
            yield doc
            continue

        key, estimate = match
        report.count(group, kept=False)
        report.removed.append(
            {"kept_id": kept_ids[key], "removed_id": doc.id, "estimate": round(estimate, 6)}
        )
        log.debug(f"Removed {doc.id}: near-duplicate of {kept_ids[key]} ({estimate:.3f})")


def _best_match(index, signature, threshold):
    best = None
    for key in index.query(signature):
        estimate = estimate_jaccard(index.signatures[key], signature)
        if estimate < threshold:
            continue
        if best is None or estimate > best[1] or (estimate == best[1] and key < best[0]):
            best = (key, estimate)
    return best
