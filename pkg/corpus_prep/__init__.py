"""Corpus Prep - corpus preparation and evaluation toolkit for adapting LLMs to less-resourced languages."""

__version__ = "0.1.0"
