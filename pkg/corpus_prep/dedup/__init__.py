"""Near-duplicate removal and novelty filtering."""

from corpus_prep.dedup.minhash import LshIndex, estimate_jaccard, minhash, shingle
from corpus_prep.dedup.near_duplicates import DedupReport, dedup_corpus
from corpus_prep.dedup.novelty import novelty_filter, rouge_l
