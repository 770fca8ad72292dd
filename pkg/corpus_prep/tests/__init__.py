"""Tests for corpus_prep."""
