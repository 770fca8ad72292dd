"""Parallel corpus alignment at paragraph, document and separate levels."""

from corpus_prep.align.alignment import align_corpus, concat_documents, emit_separate, interleave_paragraphs
from corpus_prep.align.parallel import ParallelPair, join_pairs, load_joined_pairs, load_pairs
