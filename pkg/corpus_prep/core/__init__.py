"""Document model, line-record I/O, unit splitting and tokenizers."""

from corpus_prep.core.document import Document, Unit
from corpus_prep.core.records import parse_record, read_records, serialize_record, write_records
from corpus_prep.core.tokenizer import ByteTokenizer, TokenizerInterface, load_tokenizer
from corpus_prep.core.units import join_units, split_units
