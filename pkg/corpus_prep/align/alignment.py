"""Building language-alignment training documents from parallel pairs.

Three levels: paragraph interleaving, whole-document concatenation, and
separate documents that only carry the pair id.
"""

from corpus_prep.core.document import Document
from corpus_prep.core.units import split_paragraphs
from corpus_prep.exceptions import AlignmentError, ConfigurationError
from corpus_prep.utils import throw

JOINER = "\n\n"
MODES = ("paragraph", "document", "separate")
ORDERS = ("src_first", "tgt_first")


def interleave_paragraphs(pair):
    """Alternate source and target paragraphs: src1, tgt1, src2, tgt2, ..."""
    src_paragraphs = _paragraphs(pair.src.text)
    tgt_paragraphs = _paragraphs(pair.tgt.text)
    if len(src_paragraphs) != len(tgt_paragraphs):
        throw(
            f"Pair {pair.pair_id}: source has {len(src_paragraphs)} paragraphs, "
            f"target has {len(tgt_paragraphs)}",
            AlignmentError,
        )

    pieces = []
    for src_paragraph, tgt_paragraph in zip(src_paragraphs, tgt_paragraphs):
        pieces.extend((src_paragraph, tgt_paragraph))
    return Document(id=pair.pair_id, text=JOINER.join(pieces), meta=_meta(pair, "paragraph"))


def concat_documents(pair, order="src_first"):
    """Full source text, a blank line, then the full target text (or the reverse)."""
    if order not in ORDERS:
        throw(f"Unknown concatenation order: {order}", ConfigurationError)
    first, second = (pair.src, pair.tgt) if order == "src_first" else (pair.tgt, pair.src)

    meta = _meta(pair, "document")
    meta["order"] = order
    empty = [side for side, doc in (("src", pair.src), ("tgt", pair.tgt)) if not doc.text]
    if empty:
        meta["empty_side"] = ",".join(empty)
    return Document(id=pair.pair_id, text=first.text + JOINER + second.text, meta=meta)


def emit_separate(pair):
    """Both documents unchanged, each tagged with the pair id."""
    src = pair.src.copy()
    tgt = pair.tgt.copy()
    src.meta["pair_id"] = pair.pair_id
    tgt.meta["pair_id"] = pair.pair_id
    return src, tgt


def align_corpus(pairs, mode="paragraph", order="src_first"):
    """Stream aligned documents for every pair using one alignment level."""
    if mode not in MODES:
        throw(f"Unknown alignment mode: {mode}", ConfigurationError)
    if order not in ORDERS:
        throw(f"Unknown concatenation order: {order}", ConfigurationError)
    return _aligned(pairs, mode, order)


def _aligned(pairs, mode, order):
    for pair in pairs:
        if mode == "paragraph":
            yield interleave_paragraphs(pair)
        elif mode == "document":
            yield concat_documents(pair, order)
        else:
            yield from emit_separate(pair)


def _paragraphs(text):
    if not text:
        return []
    return split_paragraphs(text)[0]


def _meta(pair, mode):
    return {
        "mode": mode,
        "pair_id": pair.pair_id,
        "src_id": pair.src.id,
        "tgt_id": pair.tgt.id,
        "src_lang": pair.src.lang,
        "tgt_lang": pair.tgt.lang,
    }
