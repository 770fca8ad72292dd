from . import __version__ as app_version

app_name = "corpus_prep"
app_title = "Corpus Prep"
app_publisher = "corpus-prep maintainers"
app_description = "Corpus preparation and evaluation toolkit for adapting LLMs to less-resourced languages"
app_license = "MIT"

# Pipeline stages
# ---------------
# Each stage runner is called as runner(input_path, output_path, params, settings)
# and returns a report dict. Resolved lazily through corpus_prep.utils.get_attr.

pipeline_stages = {
    "filters": "corpus_prep.jobs.stages.run_filters",
    "dedup": "corpus_prep.jobs.stages.run_dedup",
    "novelty": "corpus_prep.jobs.stages.run_novelty",
    "align": "corpus_prep.jobs.stages.run_align",
    "merge_pages": "corpus_prep.jobs.stages.run_merge_pages",
    "pack": "corpus_prep.jobs.stages.run_pack",
}

# Stages whose output is no longer a document corpus
terminal_stages = ["pack"]

# Stages that read something other than document records
source_stages = ["align", "merge_pages"]

# Filters
# -------

text_filters = {
    "remove_images": "corpus_prep.filters.text_filters.remove_images",
    "normalize_newlines": "corpus_prep.filters.text_filters.normalize_newlines",
    "reformat_unicode": "corpus_prep.filters.text_filters.reformat_unicode",
    "correct_diacritics": "corpus_prep.filters.text_filters.correct_diacritics",
    "filter_long_paragraphs": "corpus_prep.filters.text_filters.filter_long_paragraphs",
    "collapse_repeated_paragraphs": "corpus_prep.filters.text_filters.collapse_repeated_paragraphs",
}

default_filters = [
    "remove_images",
    "normalize_newlines",
    "reformat_unicode",
    "correct_diacritics",
]

# Profiles append filters to the default order
filter_profiles = {
    "nanonets": ["filter_long_paragraphs", "collapse_repeated_paragraphs"],
}

# Providers
# ---------

tokenizers = {
    "reference": "corpus_prep.core.tokenizer.ByteTokenizer",
    "hf": "corpus_prep.core.tokenizer.HuggingFaceTokenizer",
}

merge_providers = {
    "heuristic": "corpus_prep.pagemerge.providers.HeuristicMergeProvider",
    "replay": "corpus_prep.pagemerge.providers.ReplayMergeProvider",
}

language_detectors = {
    "stopwords": "corpus_prep.evalmetrics.langdetect.StopwordDetector",
}
