"""Stitching the pages of one document together."""

from corpus_prep.core.document import Document
from corpus_prep.core.units import split_paragraphs
from corpus_prep.pagemerge.heuristics import running_lines
from corpus_prep.pagemerge.pages import MergeAction, MergeLogEntry, validate_pages
from corpus_prep.pagemerge.providers import HeuristicMergeProvider
from corpus_prep.utils import logger

PARAGRAPH_JOINER = "\n\n"


def merge_pages(pages, provider=None, doc_id=None, merge_log=None):
    """Merge a document's pages into one Document.

    Unlabeled pages are classified by the provider and boilerplate pages are
    dropped. Every boundary between consecutive content pages is decided by the
    provider; decisions are appended to `merge_log` when one is given.
    """
    provider = provider or HeuristicMergeProvider()
    validate_pages(pages)
    doc_id = doc_id or (pages[0].doc_id if pages else "") or "document"
    running = running_lines(pages)

    content = []
    for page in pages:
        label = page.label if page.label != "unlabeled" else provider.classify(page, running)
        if label == "content":
            content.append(page)

    meta = {"pages": str(len(pages)), "content_pages": str(len(content))}
    if not content:
        logger("pagemerge").info(f"Document {doc_id}: no content pages")
        meta["empty"] = "true"
        return Document(id=doc_id, text="", meta=meta)
    if len(content) == 1:
        return Document(id=doc_id, text=content[0].text, meta=meta)

    merged = _paragraphs(content[0].text)
    for left, right in zip(content, content[1:]):
        incoming = _paragraphs(right.text)
        merged = _merge_boundary(provider, doc_id, left, right, merged, incoming, running, merge_log)
    return Document(id=doc_id, text=PARAGRAPH_JOINER.join(merged), meta=meta)


def _merge_boundary(provider, doc_id, left, right, merged, incoming, running, merge_log):
    while merged and incoming:
        decision = provider.decide(doc_id, left.index, right.index, merged[-1], incoming[0], running)
        action = MergeAction(decision)
        if merge_log is not None:
            merge_log.append(MergeLogEntry(doc_id, left.index, right.index, action.value))

        if action is MergeAction.DROP_FOOTER:
            merged.pop()
            continue
        if action is MergeAction.DROP_HEADER:
            incoming.pop(0)
            continue
        if action is MergeAction.JOIN_HYPHENATED:
            merged[-1] = merged[-1].rstrip()[:-1] + incoming.pop(0).lstrip()
        elif action is MergeAction.JOIN_SAME_PARAGRAPH:
            merged[-1] = merged[-1].rstrip() + " " + incoming.pop(0).lstrip()
        break
    return merged + incoming


def _paragraphs(text):
    paragraphs, _ = split_paragraphs(text.strip())
    return [paragraph for paragraph in paragraphs if paragraph.strip()]


def merge_documents(documents, provider=None, merge_log=None):
    """Merge every grouped document; yields one Document per doc_id."""
    for doc_id, pages in documents.items():
        yield merge_pages(pages, provider=provider, doc_id=doc_id, merge_log=merge_log)
