"""Reference data shipped with corpus_prep."""
