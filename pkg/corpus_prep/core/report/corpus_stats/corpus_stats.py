"""Corpus Statistics Report.

Token and document counts per corpus with each corpus' share of all tokens.
Packed corpora are counted by their exact example length; raw corpora are
tokenized with the configured tokenizer.
"""

import os

from corpus_prep.core.records import document_from_row, read_jsonl
from corpus_prep.core.tokenizer import load_tokenizer


def execute(filters=None):
    """Execute the Corpus Statistics Report."""
    filters = filters or {}
    columns = get_columns()
    data = get_data(filters)

    return columns, data


def get_columns():
    """Get report columns."""
    return [
        {"label": "Corpus", "fieldname": "corpus", "fieldtype": "Data", "width": 240},
        {"label": "Number of tokens", "fieldname": "tokens", "fieldtype": "Int", "width": 160},
        {"label": "Number of documents", "fieldname": "documents", "fieldtype": "Int", "width": 160},
        {
            "label": "Total percentage",
            "fieldname": "percentage",
            "fieldtype": "Percent",
            "precision": 1,
            "width": 120,
        },
    ]


def get_data(filters):
    """Get report data: one row per corpus plus a Total row."""
    tokenizer = filters.get("tokenizer_instance") or load_tokenizer(filters.get("tokenizer", "reference"))
    rows = [count_corpus(path, tokenizer) for path in filters.get("corpora", [])]

    total_tokens = sum(row["tokens"] for row in rows)
    for row in rows:
        row["percentage"] = round(row["tokens"] / total_tokens * 100, 1) if total_tokens else 0.0

    rows.append(
        {
            "corpus": "Total",
            "tokens": total_tokens,
            "documents": sum(row["documents"] for row in rows),
            "percentage": None,
        }
    )
    return rows


def count_corpus(path, tokenizer):
    """Count tokens and documents of one record file."""
    tokens = 0
    documents = 0
    for line_number, row in read_jsonl(path):
        if "token_ids" in row:
            tokens += len(row["token_ids"])
        else:
            doc = document_from_row(row, line_number)
            tokens += len(tokenizer.encode(doc.text))
        documents += 1

    return {"corpus": corpus_name(path), "tokens": tokens, "documents": documents}


def corpus_name(path):
    """Corpus label: file name without the record extension."""
    name = os.path.basename(os.fspath(path))
    for suffix in (".jsonl", ".json"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return name
