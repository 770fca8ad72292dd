"""Unit tests for the document model, record I/O, unit splitting and tokenizers."""

import json
import os
import random
import tempfile
import unittest

from corpus_prep.core.document import Document, Unit
from corpus_prep.core.records import parse_record, read_records, serialize_record, write_records
from corpus_prep.core.tokenizer import ByteTokenizer, TokenizerInterface, load_tokenizer
from corpus_prep.core.units import join_units, split_paragraphs, split_units
from corpus_prep.exceptions import (
    ConfigurationError,
    CorpusIOError,
    RecordParseError,
    SerializationError,
    ValidationError,
)


class TestRecords(unittest.TestCase):
    """Test parsing and serializing document records."""

    def test_parse_record(self):
        """Test field mapping and defaults."""
        doc = parse_record('{"id":"a1","text":"Pozdrav","lang":"sl"}')
        self.assertEqual(doc, Document("a1", "Pozdrav", "sl", {}))

        doc = parse_record('{"id":"b2","text":"hi","meta":{"src":"wiki"}}')
        self.assertEqual(doc.lang, "")
        self.assertEqual(doc.meta, {"src": "wiki"})

    def test_parse_record_errors(self):
        """Test that invalid records are rejected."""
        with self.assertRaises(ValidationError):
            parse_record('{"id":"","text":"x"}')

        with self.assertRaises(RecordParseError) as ctx:
            parse_record('{"id":"a"}')
        self.assertEqual(ctx.exception.field, "text")

        with self.assertRaises(RecordParseError) as ctx:
            parse_record('{"id":"a","text":"x","lang":5}')
        self.assertEqual(ctx.exception.field, "lang")

        with self.assertRaises(RecordParseError):
            parse_record('{"id":"a","text":"x","meta":{"n":1}}')

        with self.assertRaises(RecordParseError):
            parse_record("{not json")

    def test_invalid_language_code(self):
        """Test the two-letter language rule."""
        with self.assertRaises(ValidationError):
            Document("a", "x", "slv").validate()
        Document("a", "x", "").validate()

    def test_serialize_record(self):
        """Test one-line output with sorted meta keys."""
        doc = Document("a1", "prva\nvrstica", "sl", {"z": "1", "a": "2", "m": "3"})
        line = serialize_record(doc)

        self.assertNotIn("\n", line)
        self.assertEqual(list(json.loads(line)["meta"]), ["a", "m", "z"])
        self.assertEqual(parse_record(line), doc)

    def test_serialize_rejects_lone_surrogates(self):
        """Test that text which cannot be encoded is a serialization error."""
        with self.assertRaises(SerializationError):
            serialize_record(Document("a", "bad \ud800 text"))

    def test_random_round_trip(self):
        """Test parse(serialize(d)) == d over random documents."""
        rng = random.Random(7)
        alphabet = "abcčšž ABC\n\t\"\\{}ÄŤ€😀"
        for i in range(300):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
            meta = {f"k{j}": rng.choice(["", "x", "čšž"]) for j in range(rng.randint(0, 4))}
            doc = Document(f"d{i}", text, rng.choice(["", "sl", "en"]), meta)
            self.assertEqual(parse_record(serialize_record(doc)), doc)


class TestRecordFiles(unittest.TestCase):
    """Test streaming record files."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.tmp.name, "corpus.jsonl")

    def tearDown(self):
        self.tmp.cleanup()

    def test_write_and_read(self):
        docs = [Document("a", "ena"), Document("b", "dve", "sl", {"src": "wiki"})]
        self.assertEqual(write_records(self.path, docs), 2)
        self.assertEqual(list(read_records(self.path)), docs)

    def test_error_names_line(self):
        """Test that parse errors carry the line number."""
        with open(self.path, "w", encoding="utf-8") as f:
            f.write('{"id":"a","text":"x"}\n\n{"id":"b"}\n')

        with self.assertRaises(RecordParseError) as ctx:
            list(read_records(self.path))
        self.assertEqual(ctx.exception.line_number, 3)
        self.assertIn("corpus.jsonl", str(ctx.exception))

    def test_missing_file(self):
        with self.assertRaises(CorpusIOError):
            list(read_records(os.path.join(self.tmp.name, "missing.jsonl")))


class TestSplitUnits(unittest.TestCase):
    """Test sentence, paragraph and section splitting."""

    def test_paragraph_split(self):
        units = split_units(Document("d", "A\n\nB"), "paragraph")

        self.assertEqual([(u.text, u.ordinal) for u in units], [("A", 0), ("B", 1)])
        self.assertTrue(all(u.source_id == "d" and u.kind == "paragraph" for u in units))

    def test_section_split(self):
        units = split_units(Document("d", "# H\nx\n# G\ny"), "section")

        self.assertEqual(len(units), 2)
        self.assertTrue(all(u.text.startswith("#") for u in units))

    def test_sentence_split(self):
        """Test that abbreviations do not end a sentence."""
        units = split_units(Document("d", "Dr. Novak je prišel. Sedel je."), "sentence")
        self.assertEqual([u.text for u in units], ["Dr. Novak je prišel.", "Sedel je."])

        units = split_units(Document("d", "Je to res? Da! Seveda."), "sentence")
        self.assertEqual([u.text for u in units], ["Je to res?", "Da!", "Seveda."])

    def test_initials_not_split(self):
        units = split_units(Document("d", "Avtor je J. Novak. Konec."), "sentence")
        self.assertEqual([u.text for u in units], ["Avtor je J. Novak.", "Konec."])

    def test_empty_text(self):
        for strategy in ("sentence", "paragraph", "section"):
            self.assertEqual(split_units(Document("d", ""), strategy), [])

    def test_unknown_strategy(self):
        with self.assertRaises(ConfigurationError):
            split_units(Document("d", "x"), "chapter")

    def test_round_trip(self):
        """Test join_units(split_units(d)) == d.text for random texts."""
        rng = random.Random(11)
        pieces = ["Prvi stavek.", " Drugi? ", "# Naslov", "\n", "\n\n", "\n \n", "besedilo", "Dr. X", "!"]
        for _ in range(300):
            text = "".join(rng.choice(pieces) for _ in range(rng.randint(0, 12)))
            doc = Document("d", text)
            for strategy in ("sentence", "paragraph", "section"):
                units = split_units(doc, strategy)
                self.assertEqual(join_units(units), text)
                self.assertEqual([u.ordinal for u in units], list(range(len(units))))

    def test_paragraph_join_with_blank_line(self):
        """Test that normalized paragraphs rejoin with a blank line."""
        text = "Ena.\n\nDve.\n\nTri."
        paragraphs, separators = split_paragraphs(text)
        self.assertEqual("\n\n".join(paragraphs), text)
        self.assertEqual(separators, ["\n\n", "\n\n"])

    def test_unit_invariants(self):
        with self.assertRaises(ValidationError):
            Unit("x", "chapter", "d", 0)
        with self.assertRaises(ValidationError):
            Unit("x", "sentence", "d", -1)


class TestTokenizer(unittest.TestCase):
    """Test the reference tokenizer and tokenizer loading."""

    def test_byte_tokenizer(self):
        tokenizer = ByteTokenizer()

        self.assertIsInstance(tokenizer, TokenizerInterface)
        self.assertEqual(tokenizer.encode("a"), [ord("a") + 3])
        self.assertEqual(len(tokenizer.encode("č")), 2)
        self.assertNotEqual(tokenizer.bos_id, tokenizer.eos_id)
        self.assertTrue(all(t >= 3 for t in tokenizer.encode("Pozdravljen, svet! 😀")))

    def test_decode_inverts_encode(self):
        tokenizer = ByteTokenizer()
        for text in ["", "abc", "čšžČŠŽ", "line\nbreak", "😀 emoji"]:
            self.assertEqual(tokenizer.decode(tokenizer.encode(text)), text)

    def test_load_tokenizer(self):
        self.assertIsInstance(load_tokenizer("reference"), ByteTokenizer)

        for spec in ("unknown", "reference:x", "hf"):
            with self.assertRaises(ConfigurationError):
                load_tokenizer(spec)


if __name__ == "__main__":
    unittest.main()
