"""Splitting, packing and padding documents into fixed-length training examples."""

from corpus_prep.packer.packing import PackedExample, PackSummary, pack, pack_corpus, read_examples
from corpus_prep.packer.subdocuments import SourceSpan, Subdocument, make_subdocuments
from corpus_prep.packer.verify import PackReport, verify_pack
