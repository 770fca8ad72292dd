"""Pipeline stage runners.

Every runner reads `input_path`, writes `output_path` and returns its report
as a dict. Side files (removed pairs, merge logs) sit next to the output.
"""

from tqdm import tqdm

from corpus_prep.align.alignment import align_corpus
from corpus_prep.align.parallel import load_joined_pairs, load_pairs
from corpus_prep.core.records import read_jsonl, read_records, write_jsonl, write_records
from corpus_prep.core.tokenizer import load_tokenizer
from corpus_prep.dedup.minhash import DEFAULT_NGRAM
from corpus_prep.dedup.near_duplicates import dedup_corpus
from corpus_prep.dedup.novelty import novelty_filter
from corpus_prep.exceptions import CorpusIOError
from corpus_prep.filters.pipeline import filter_corpus, load_filter_config
from corpus_prep.packer.packing import pack_corpus
from corpus_prep.pagemerge.merge import merge_documents
from corpus_prep.pagemerge.pages import read_pages
from corpus_prep.pagemerge.providers import load_merge_provider
from corpus_prep.utils import logger, throw


def progress(items, stage):
    """Progress bar on interactive terminals only."""
    return tqdm(items, desc=stage, unit="doc", disable=None, leave=False)


def side_path(output_path, suffix):
    """`out/02_dedup.jsonl` -> `out/02_dedup.<suffix>.jsonl`."""
    base = output_path[: -len(".jsonl")] if output_path.endswith(".jsonl") else output_path
    return f"{base}.{suffix}.jsonl"


def run_filters(input_path, output_path, params, settings):
    config = params.get("config") or {key: value for key, value in params.items() if key != "config"}
    filters = load_filter_config(config, profiles=settings.profiles)
    docs, report = filter_corpus(progress(read_records(input_path), "filters"), filters)
    write_records(output_path, docs)

    logger("filters").info(f"filters: {report.docs_in} documents in, {report.docs_out} out")
    return {"stage": "filters", **report.as_dict()}


def run_dedup(input_path, output_path, params, settings):
    docs, report = dedup_corpus(
        progress(read_records(input_path), "dedup"),
        threshold=params.get("threshold", 0.65),
        n=params.get("ngram", DEFAULT_NGRAM),
        seed=settings.seed,
        group_by=params.get("group_by"),
    )
    write_records(output_path, docs)
    removed_path = side_path(output_path, "removed")
    write_jsonl(removed_path, report.removed)

    logger("dedup").info(f"dedup: {report.docs_in} documents in, {report.docs_out} out")
    return {"stage": "dedup", **report.as_dict(), "removed_pairs": removed_path}


def run_novelty(input_path, output_path, params, settings):
    pool = read_pool(params["pool"]) if params.get("pool") else []
    docs_in = 0

    def counted(docs):
        nonlocal docs_in
        for doc in docs:
            docs_in += 1
            yield doc

    candidates = counted(progress(read_records(input_path), "novelty"))
    kept = novelty_filter(candidates, pool, params.get("max_rouge", 0.7))
    docs_out = write_records(output_path, kept)

    logger("novelty").info(f"novelty: {docs_in} candidates in, {docs_out} kept")
    return {"stage": "novelty", "docs_in": docs_in, "docs_out": docs_out, "pool": len(pool)}


def read_pool(path):
    """Pool texts from a record file (`text` field) or a plain text file (one per line)."""
    if path.endswith(".jsonl"):
        return [row["text"] for _, row in read_jsonl(path) if isinstance(row, dict) and "text" in row]
    try:
        with open(path, encoding="utf-8") as f:
            return [line.rstrip("\n") for line in f if line.strip()]
    except OSError as e:
        throw(f"Cannot read {path}: {e.strerror or e}", CorpusIOError)


def run_align(input_path, output_path, params, settings):
    if params.get("target"):
        pairs = load_joined_pairs(input_path, params["target"], key=params.get("key", "pair_id"))
    else:
        pairs = load_pairs(input_path)
    mode = params.get("mode", "paragraph")
    docs = align_corpus(progress(pairs, "align"), mode=mode, order=params.get("order", "src_first"))
    docs_out = write_records(output_path, docs)

    logger("align").info(f"align: {docs_out} documents written ({mode})")
    return {"stage": "align", "mode": mode, "docs_out": docs_out}


def run_merge_pages(input_path, output_path, params, settings):
    provider = load_merge_provider(params.get("provider", "heuristic"), path=params.get("decisions"))
    documents = read_pages(input_path)
    merge_log = []
    docs_out = write_records(output_path, merge_documents(documents, provider=provider, merge_log=merge_log))
    log_path = side_path(output_path, "merge_log")
    write_jsonl(log_path, (entry.as_record() for entry in merge_log))

    actions = {}
    for entry in merge_log:
        actions[entry.action] = actions.get(entry.action, 0) + 1
    pages = sum(map(len, documents.values()))
    logger("pagemerge").info(f"merge_pages: {docs_out} documents from {pages} pages")
    return {"stage": "merge_pages", "docs_out": docs_out, "actions": actions, "merge_log": log_path}


def run_pack(input_path, output_path, params, settings):
    tokenizer = load_tokenizer(params.get("tokenizer", "reference"))
    examples, summary = pack_corpus(
        progress(read_records(input_path), "pack"),
        context_length=params.get("context_length", 4096),
        tokenizer=tokenizer,
        strategy=params.get("strategy", "paragraph"),
    )
    write_jsonl(output_path, (example.as_record() for example in examples))

    logger("packer").info(f"pack: {summary.documents} documents into {summary.examples} examples")
    return {"stage": "pack", **summary.as_dict()}
