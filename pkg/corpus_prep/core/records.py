"""Streaming line-record I/O.

One JSON object per line, UTF-8. Document records carry exactly the fields
`id`, `text`, `lang` and `meta`; meta keys are written in sorted order so the
same document always serializes to the same bytes.
"""

import json
import os

from corpus_prep.core.document import Document
from corpus_prep.exceptions import CorpusIOError, RecordParseError, SerializationError
from corpus_prep.utils import throw

DOCUMENT_FIELDS = ("id", "text", "lang", "meta")


def parse_record(line, line_number=None):
    """Parse one serialized document record."""
    try:
        data = json.loads(line)
    except json.JSONDecodeError as e:
        raise RecordParseError(f"{_where(line_number)}malformed record: {e.msg}", line_number=line_number)

    return document_from_row(data, line_number)


def document_from_row(data, line_number=None):
    """Build and validate a Document from an already decoded record."""
    if not isinstance(data, dict):
        raise RecordParseError(f"{_where(line_number)}record must be an object", line_number=line_number)

    for field_name in ("id", "text"):
        if field_name not in data:
            raise RecordParseError(
                f"{_where(line_number)}missing field '{field_name}'",
                field=field_name,
                line_number=line_number,
            )
        if not isinstance(data[field_name], str):
            raise RecordParseError(
                f"{_where(line_number)}field '{field_name}' must be a string",
                field=field_name,
                line_number=line_number,
            )

    lang = data.get("lang") or ""
    if not isinstance(lang, str):
        raise RecordParseError(
            f"{_where(line_number)}field 'lang' must be a string", field="lang", line_number=line_number
        )

    meta = data.get("meta") or {}
    if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
        raise RecordParseError(
            f"{_where(line_number)}field 'meta' must be a flat string map",
            field="meta",
            line_number=line_number,
        )

    return Document(id=data["id"], text=data["text"], lang=lang, meta=dict(meta)).validate()


def serialize_record(doc):
    """Serialize a document as one physical line (no trailing newline)."""
    try:
        doc.text.encode("utf-8")
    except UnicodeEncodeError as e:
        throw(f"Document {doc.id}: cannot serialize text ({e.reason} at {e.start})", SerializationError)
    doc.validate()

    record = {
        "id": doc.id,
        "text": doc.text,
        "lang": doc.lang,
        "meta": {key: doc.meta[key] for key in sorted(doc.meta)},
    }
    return json.dumps(record, ensure_ascii=False)


def read_jsonl(path):
    """Yield (line_number, object) for every non-blank line of a JSONL file."""
    try:
        with open(path, encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    yield line_number, json.loads(line)
                except json.JSONDecodeError as e:
                    message = f"{path}:{line_number}: malformed record: {e.msg}"
                    raise RecordParseError(message, line_number=line_number)
    except OSError as e:
        throw(f"Cannot read {path}: {e.strerror or e}", CorpusIOError)


def write_jsonl(path, rows):
    """Write dict rows as JSONL; returns the number of rows written."""
    _ensure_parent(path)
    count = 0
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for row in rows:
                f.write(json.dumps(row, ensure_ascii=False) + "\n")
                count += 1
    except OSError as e:
        throw(f"Cannot write {path}: {e.strerror or e}", CorpusIOError)
    return count


def read_records(path):
    """Stream documents from a record file."""
    try:
        with open(path, encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    yield parse_record(line, line_number=line_number)
                except RecordParseError as e:
                    e.args = (f"{path}: {e.args[0]}",)
                    raise
    except OSError as e:
        throw(f"Cannot read {path}: {e.strerror or e}", CorpusIOError)


def write_records(path, docs):
    """Write documents to a record file; returns the number written."""
    _ensure_parent(path)
    count = 0
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for doc in docs:
                f.write(serialize_record(doc) + "\n")
                count += 1
    except OSError as e:
        throw(f"Cannot write {path}: {e.strerror or e}", CorpusIOError)
    return count


def _ensure_parent(path):
    parent = os.path.dirname(os.fspath(path))
    if parent:
        try:
            os.makedirs(parent, exist_ok=True)
        except OSError as e:
            throw(f"Cannot create directory {parent}: {e.strerror or e}", CorpusIOError)


def _where(line_number):
    return f"line {line_number}: " if line_number else ""
