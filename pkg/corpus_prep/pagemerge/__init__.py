"""Classifying OCR pages and merging them into documents."""

from corpus_prep.pagemerge.heuristics import classify_page, decide_merge, running_lines
from corpus_prep.pagemerge.merge import merge_documents, merge_pages
from corpus_prep.pagemerge.pages import MergeAction, MergeLogEntry, Page, group_pages, read_pages
from corpus_prep.pagemerge.providers import HeuristicMergeProvider, ReplayMergeProvider, load_merge_provider
