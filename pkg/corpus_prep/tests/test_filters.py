"""Unit tests for the text-cleaning filters and the filter pipeline."""

import random
import unittest

from corpus_prep.core.document import Document
from corpus_prep.exceptions import ConfigurationError
from corpus_prep.filters.pipeline import (
    FilterReport,
    apply_pipeline,
    filter_corpus,
    filter_names,
    load_filter_config,
    resolve_filters,
)
from corpus_prep.filters.text_filters import (
    DEFAULT_MOJIBAKE,
    collapse_repeated_paragraphs,
    correct_diacritics,
    filter_long_paragraphs,
    normalize_newlines,
    reformat_unicode,
    remove_images,
)

FUZZ_PIECES = [
    "a", "č", " ", "\n", "\n\n\n", "![x](y.png)", "![", "](u)", "ˇc", "sˇ", "ˇZ",
    "c\u030c", "Ä\u008d", "Å¡", "P", "\n\nP\n\nP", "xxxxxx", "\n \n",
]


class TestTextFilters(unittest.TestCase):
    """Test each filter on its documented cases."""

    def test_remove_images(self):
        self.assertEqual(remove_images("a ![fig](x.png) b"), "a  b")
        self.assertEqual(remove_images("no images"), "no images")
        self.assertEqual(remove_images("![a](u)![b](v)"), "")
        self.assertEqual(remove_images("[link](u) ostane"), "[link](u) ostane")

    def test_normalize_newlines(self):
        self.assertEqual(normalize_newlines("a\n\n\n\nb"), "a\n\nb")
        self.assertEqual(normalize_newlines("a\n\nb"), "a\n\nb")
        self.assertEqual(normalize_newlines("\n\n\n"), "\n\n")

    def test_reformat_unicode(self):
        """Test NFC composition and mojibake repair."""
        self.assertEqual(reformat_unicode("zc\u030c"), "zč")
        self.assertEqual(reformat_unicode("Že je tu."), "Že je tu.")
        self.assertEqual(reformat_unicode("Ä\u008d"), "č")
        self.assertEqual(reformat_unicode("Å¡ola"), "šola")

    def test_default_mojibake_table(self):
        """Test that the default table covers Latin-1 and CP1250 misreadings."""
        for letter in "čšž":
            raw = letter.encode("utf-8")
            self.assertEqual(DEFAULT_MOJIBAKE[raw.decode("latin-1")], letter)
            self.assertEqual(DEFAULT_MOJIBAKE[raw.decode("cp1250")], letter)

    def test_reformat_unicode_extra_table(self):
        self.assertEqual(reformat_unicode("kaXXa", mojibake={"XX": "č"}), "kača")

    def test_correct_diacritics(self):
        self.assertEqual(correct_diacritics("ˇclanek"), "članek")
        self.assertEqual(correct_diacritics("sˇola"), "šola")
        self.assertEqual(correct_diacritics("ˇZaba"), "Žaba")
        self.assertEqual(correct_diacritics("cena"), "cena")

    def test_correct_diacritics_configured_forms(self):
        """Test that extra wrong forms come from configuration."""
        self.assertEqual(correct_diacritics("kaèa"), "kaèa")
        self.assertEqual(correct_diacritics("kaèa", diacritics={"è": "č"}), "kača")

    def test_filter_long_paragraphs(self):
        """Test the strict 15000-character limit."""
        self.assertEqual(filter_long_paragraphs("a" * 15001 + "\n\nkratko"), "kratko")
        text = "a" * 15000 + "\n\nkratko"
        self.assertEqual(filter_long_paragraphs(text), text)
        self.assertEqual(filter_long_paragraphs("ena\n\ndve"), "ena\n\ndve")

    def test_collapse_repeated_paragraphs(self):
        """Test the more-than-100 repeat rule."""
        self.assertEqual(collapse_repeated_paragraphs("\n\n".join(["P"] * 101)), "P")
        text = "\n\n".join(["P"] * 100)
        self.assertEqual(collapse_repeated_paragraphs(text), text)
        self.assertEqual(collapse_repeated_paragraphs("A\n\nB\n\nA"), "A\n\nB\n\nA")
        self.assertEqual(collapse_repeated_paragraphs("\n\n".join(["P", "Q"] + ["P"] * 100)), "P\n\nQ")

    def test_paragraph_filter_parameters(self):
        with self.assertRaises(ConfigurationError):
            filter_long_paragraphs("x", max_chars=0)
        with self.assertRaises(ConfigurationError):
            collapse_repeated_paragraphs("x", max_repeats=0)

    def test_filters_idempotent(self):
        """Test f(f(t)) == f(t) over fuzzed inputs."""
        filters = [
            remove_images,
            normalize_newlines,
            reformat_unicode,
            correct_diacritics,
            lambda t: filter_long_paragraphs(t, max_chars=5),
            lambda t: collapse_repeated_paragraphs(t, max_repeats=2),
        ]
        rng = random.Random(3)
        for _ in range(10000):
            text = "".join(rng.choice(FUZZ_PIECES) for _ in range(rng.randint(0, 20)))
            for f in filters:
                once = f(text)
                self.assertEqual(f(once), once, msg=repr(text))

    def test_paragraph_filters_never_grow(self):
        rng = random.Random(5)
        for _ in range(500):
            text = "".join(rng.choice(FUZZ_PIECES) for _ in range(rng.randint(0, 20)))
            self.assertLessEqual(len(filter_long_paragraphs(text, max_chars=4)), len(text))
            self.assertLessEqual(len(collapse_repeated_paragraphs(text, max_repeats=1)), len(text))

    def test_remove_images_locality(self):
        """Test that text outside image spans is untouched."""
        text = "pred ![alt](a.png) med ![b](c) po"
        self.assertEqual(remove_images(text), "pred  med  po")


class TestFilterPipeline(unittest.TestCase):
    """Test resolving and applying filter lists."""

    def test_apply_pipeline(self):
        doc = Document("d", "a ![i](u) b\n\n\n\nc")
        filtered, report = apply_pipeline(doc, ["remove_images", "normalize_newlines"])

        self.assertEqual(filtered.text, "a  b\n\nc")
        self.assertEqual(report.per_filter, {"remove_images": 1, "normalize_newlines": 1})
        self.assertEqual(report.chars_changed, 9)
        self.assertEqual((report.docs_in, report.docs_out), (1, 1))
        self.assertEqual(doc.text, "a ![i](u) b\n\n\n\nc")

    def test_empty_filter_list(self):
        doc = Document("d", "besedilo")
        filtered, report = apply_pipeline(doc, [])

        self.assertEqual(filtered, doc)
        self.assertEqual(report.per_filter, {})
        self.assertEqual(report.chars_changed, 0)

    def test_pipeline_idempotent(self):
        filters = load_filter_config(profiles=["nanonets"])
        rng = random.Random(9)
        for i in range(300):
            doc = Document(f"d{i}", "".join(rng.choice(FUZZ_PIECES) for _ in range(rng.randint(1, 20))))
            once, _ = apply_pipeline(doc, filters)
            twice, report = apply_pipeline(once, filters)
            self.assertEqual(twice.text, once.text)
            self.assertEqual(report.chars_changed, 0)

    def test_paragraphs_removed(self):
        _, report = apply_pipeline(
            Document("d", "dolgo\n\nok"),
            [{"name": "filter_long_paragraphs", "params": {"max_chars": 3}}],
        )
        self.assertEqual(report.paragraphs_removed, 1)

    def test_unknown_filter(self):
        with self.assertRaises(ConfigurationError):
            resolve_filters(["remove_tables"])
        with self.assertRaises(ConfigurationError):
            resolve_filters([{"name": "filter_long_paragraphs", "params": {"max_char": 5}}])
        with self.assertRaises(ConfigurationError):
            resolve_filters([42])

    def test_filter_names(self):
        self.assertEqual(
            filter_names(),
            ["remove_images", "normalize_newlines", "reformat_unicode", "correct_diacritics"],
        )
        self.assertEqual(
            filter_names(["nanonets"])[-2:],
            ["filter_long_paragraphs", "collapse_repeated_paragraphs"],
        )
        with self.assertRaises(ConfigurationError):
            filter_names(["unknown"])

    def test_load_filter_config_tables(self):
        """Test that configured tables reach the filters that use them."""
        filters = load_filter_config({"diacritics": {"è": "č"}})
        filtered, _ = apply_pipeline(Document("d", "kaèa ˇcrka"), filters)
        self.assertEqual(filtered.text, "kača črka")

    def test_load_filter_config_explicit_list(self):
        filters = load_filter_config({"filters": ["normalize_newlines"]}, profiles=["nanonets"])
        self.assertEqual(
            [f.name for f in filters],
            ["normalize_newlines", "filter_long_paragraphs", "collapse_repeated_paragraphs"],
        )

    def test_filter_corpus_drops_empty(self):
        docs = [Document("a", "![x](y)"), Document("b", "besedilo")]
        stream, report = filter_corpus(docs, filter_names())
        kept = list(stream)

        self.assertEqual([doc.id for doc in kept], ["b"])
        self.assertEqual((report.docs_in, report.docs_out), (2, 1))
        self.assertEqual(report.per_filter["remove_images"], 1)

    def test_report_merge_associative(self):
        a = FilterReport(1, 1, 0, 3, {"remove_images": 1})
        b = FilterReport(2, 1, 4, 0, {"normalize_newlines": 2})
        c = FilterReport(1, 0, 1, 1, {"remove_images": 1})

        self.assertEqual(a.merge(b).merge(c), a.merge(b.merge(c)))
        self.assertEqual(a.merge(b).merge(c).per_filter, {"remove_images": 2, "normalize_newlines": 2})


if __name__ == "__main__":
    unittest.main()
