"""Unit tests for MinHash LSH dedup and the ROUGE-L novelty filter."""

import math
import random
import unittest

import numpy as np

from corpus_prep.core.document import Document
from corpus_prep.dedup.minhash import (
    LshIndex,
    estimate_jaccard,
    lsh_threshold,
    minhash,
    shingle,
    signature_from_slots,
)
from corpus_prep.dedup.near_duplicates import UNGROUPED, dedup_corpus
from corpus_prep.dedup.novelty import lcs_length, novelty_filter, rouge_l
from corpus_prep.exceptions import ContractError, EmptySetError, SignatureMismatchError


def random_words(rng, count, vocabulary=50000):
    return [f"w{rng.randrange(vocabulary)}" for _ in range(count)]


def jaccard(a, b):
    return len(a & b) / len(a | b)


class TestMinHash(unittest.TestCase):
    """Test shingling, signatures and the similarity estimate."""

    def test_shingle(self):
        self.assertEqual(shingle("a b c", 2), shingle("a b", 2) | shingle("b c", 2))
        self.assertEqual(len(shingle("a b c", 2)), 2)
        self.assertEqual(len(shingle("a", 3)), 1)
        self.assertEqual(shingle("A  b\nC", 3), shingle("a b c", 3))
        self.assertEqual(shingle("ena dve tri štiri pet šest"), shingle("ena dve tri štiri pet šest"))

    def test_shingle_size(self):
        with self.assertRaises(ContractError):
            shingle("a b", 0)

    def test_minhash_deterministic(self):
        shingles = shingle("to je kratko besedilo za preizkus podpisa")
        a = minhash(shingles, seed=1)
        b = minhash(set(shingles), seed=1)

        self.assertEqual(len(a.hashvalues), 256)
        self.assertTrue(np.array_equal(a.hashvalues, b.hashvalues))
        self.assertEqual(estimate_jaccard(a, b), 1.0)

    def test_minhash_empty_set(self):
        with self.assertRaises(EmptySetError):
            minhash(set())

    def test_disjoint_sets(self):
        rng = random.Random(1)
        a = {rng.getrandbits(64) for _ in range(1000)}
        b = {rng.getrandbits(64) for _ in range(1000)} - a
        self.assertLess(estimate_jaccard(minhash(a), minhash(b)), 0.05)

    def test_subset_estimate(self):
        """Test A subset of B with |A|/|B| = 0.5."""
        rng = random.Random(2)
        b = set()
        while len(b) < 1000:
            b.add(rng.getrandbits(64))
        a = set(sorted(b)[:500])
        tolerance = 3 * math.sqrt(0.25 / 256)
        self.assertLessEqual(abs(estimate_jaccard(minhash(a), minhash(b)) - 0.5), tolerance)

    def test_estimate_counts_equal_slots(self):
        base = np.arange(256, dtype=np.uint64)
        self.assertEqual(estimate_jaccard(signature_from_slots(base), signature_from_slots(base + 1000)), 0.0)

        half = base.copy()
        half[128:] += 1000
        self.assertEqual(estimate_jaccard(signature_from_slots(base), signature_from_slots(half)), 0.5)

    def test_signature_from_stored_slots(self):
        """Test a signature rebuilt from a plain list matches the one it was stored from."""
        original = minhash(shingle("besedilo za shranjevanje in ponovno branje podpisa"), seed=3)
        rebuilt = signature_from_slots([int(slot) for slot in original.hashvalues], seed=3)

        self.assertEqual(rebuilt.hashvalues.dtype, np.uint64)
        self.assertEqual(estimate_jaccard(original, rebuilt), 1.0)
        index = LshIndex()
        index.insert("stored", rebuilt)
        self.assertEqual(index.query(original), ["stored"])

    def test_mismatched_signatures(self):
        shingles = shingle("a b c d e f g")
        with self.assertRaises(SignatureMismatchError):
            estimate_jaccard(minhash(shingles, seed=1), minhash(shingles, seed=2))
        with self.assertRaises(SignatureMismatchError):
            estimate_jaccard(minhash(shingles), minhash(shingles, num_perm=128))

    def test_estimate_unbiased(self):
        """Test the estimate against brute-force Jaccard within three standard deviations."""
        rng = random.Random(4)
        within = 0
        trials = 300
        for _ in range(trials):
            shared = {rng.getrandbits(64) for _ in range(rng.randint(20, 300))}
            a = shared | {rng.getrandbits(64) for _ in range(rng.randint(20, 150))}
            b = shared | {rng.getrandbits(64) for _ in range(rng.randint(20, 150))}
            exact = jaccard(a, b)
            estimate = estimate_jaccard(minhash(a), minhash(b))
            if abs(estimate - exact) <= 3 * math.sqrt(exact * (1 - exact) / 256):
                within += 1
        self.assertGreaterEqual(within / trials, 0.99)


class TestLshIndex(unittest.TestCase):
    """Test the banded index."""

    def setUp(self):
        rng = random.Random(5)
        self.text = " ".join(random_words(rng, 100))
        self.other = " ".join(random_words(rng, 100))

    def test_banding_threshold(self):
        index = LshIndex()
        self.assertEqual(index.bands * index.rows_per_band, 256)
        self.assertAlmostEqual(lsh_threshold(), 0.65, delta=0.01)

    def test_query(self):
        index = LshIndex()
        index.insert("a", minhash(shingle(self.text)))
        index.insert("b", minhash(shingle(self.other)))

        self.assertEqual(index.query(minhash(shingle(self.text))), ["a"])
        self.assertIn("a", index)
        self.assertEqual(len(index), 2)

    def test_duplicate_key(self):
        index = LshIndex()
        index.insert("a", minhash(shingle(self.text)))
        with self.assertRaises(ContractError):
            index.insert("a", minhash(shingle(self.other)))

    def test_wrong_slot_count(self):
        with self.assertRaises(SignatureMismatchError):
            LshIndex().insert("a", minhash(shingle(self.text), num_perm=128))
        with self.assertRaises(ContractError):
            LshIndex(num_perm=256, bands=16, rows_per_band=8)

    def test_merge(self):
        """Test that a merged index answers like one built in a single pass."""
        left, right = LshIndex(), LshIndex()
        left.insert("a", minhash(shingle(self.text)))
        right.insert("b", minhash(shingle(self.other)))
        merged = left.merge(right)

        self.assertEqual(len(merged), 2)
        self.assertEqual(merged.query(minhash(shingle(self.other))), ["b"])
        with self.assertRaises(ContractError):
            merged.merge(left)


class TestDedupCorpus(unittest.TestCase):
    """Test near-duplicate removal."""

    def setUp(self):
        rng = random.Random(6)
        self.text = " ".join(random_words(rng, 120))
        self.unrelated = " ".join(random_words(rng, 120))

    def test_identical_documents(self):
        docs = [Document("a", self.text), Document("b", self.text), Document("c", self.unrelated)]
        kept, report = dedup_corpus(docs)

        self.assertEqual([doc.id for doc in kept], ["a", "c"])
        self.assertEqual(report.removed, [{"kept_id": "a", "removed_id": "b", "estimate": 1.0}])
        self.assertEqual((report.docs_in, report.docs_out), (3, 2))

    def test_first_occurrence_kept(self):
        docs = [Document(str(i), self.text) for i in range(5)]
        kept, report = dedup_corpus(docs)

        self.assertEqual([doc.id for doc in kept], ["0"])
        self.assertEqual({row["kept_id"] for row in report.removed}, {"0"})

    def test_group_by(self):
        """Test that duplicates in different groups are both kept."""
        docs = [
            Document("a", self.text, meta={"category": "coding"}),
            Document("b", self.text, meta={"category": "writing"}),
            Document("c", self.text, meta={"category": "coding"}),
            Document("d", self.text),
        ]
        kept, report = dedup_corpus(docs, group_by="category")

        self.assertEqual([doc.id for doc in kept], ["a", "b", "d"])
        self.assertEqual(report.ungrouped, 1)
        self.assertEqual(report.groups["coding"], {"docs_in": 2, "docs_out": 1})
        self.assertEqual(report.groups[UNGROUPED], {"docs_in": 1, "docs_out": 1})

    def test_threshold_contract(self):
        for threshold in (0, 1, 1.5):
            with self.assertRaises(ContractError):
                dedup_corpus([], threshold=threshold)
        with self.assertRaises(ContractError):
            dedup_corpus([], n=0)

    def test_seed_changes_nothing_for_exact_duplicates(self):
        docs = [Document("a", self.text), Document("b", self.text)]
        for seed in (1, 2, 42):
            kept, _ = dedup_corpus(docs, seed=seed)
            self.assertEqual([doc.id for doc in kept], ["a"])

    def test_planted_clusters(self):
        """Test that clusters with exact Jaccard of at least 0.8 collapse to one document."""
        rng = random.Random(8)
        collapsed = 0
        trials = 200
        for trial in range(trials):
            words = random_words(rng, 200)
            variant = list(words)
            for position in (40, 150):
                variant[position] = f"x{trial}_{position}"
            self.assertGreaterEqual(jaccard(shingle(" ".join(words)), shingle(" ".join(variant))), 0.8)

            docs = [
                Document("base", " ".join(words)),
                Document("variant", " ".join(variant)),
                Document("other", " ".join(random_words(rng, 200))),
            ]
            kept, _ = dedup_corpus(docs, seed=trial + 1)
            if [doc.id for doc in kept] == ["base", "other"]:
                collapsed += 1
        self.assertGreaterEqual(collapsed / trials, 0.95)


class TestNovelty(unittest.TestCase):
    """Test ROUGE-L and the novelty filter."""

    def test_lcs_length(self):
        self.assertEqual(lcs_length("a b c d".split(), "a c d".split()), 3)
        self.assertEqual(lcs_length([], ["a"]), 0)

    def test_rouge_l(self):
        self.assertEqual(rouge_l("the cat sat", "the cat sat"), 1.0)
        self.assertEqual(rouge_l("one two", "three four"), 0.0)
        self.assertAlmostEqual(rouge_l("the cat", "the cat sat"), 0.8)
        self.assertEqual(rouge_l("", "x"), 0.0)

    def test_rouge_l_symmetric(self):
        rng = random.Random(10)
        for _ in range(100):
            a = " ".join(rng.choice("abcde") for _ in range(rng.randint(1, 10)))
            b = " ".join(rng.choice("abcde") for _ in range(rng.randint(1, 10)))
            self.assertAlmostEqual(rouge_l(a, b), rouge_l(b, a))

    def test_novelty_filter(self):
        self.assertEqual(list(novelty_filter(["napiši pesem"], pool=["napiši pesem"])), [])
        self.assertEqual(list(novelty_filter(["prvi primer"])), ["prvi primer"])
        self.assertEqual(list(novelty_filter(["isto navodilo", "isto navodilo"])), ["isto navodilo"])

    def test_novelty_filter_documents(self):
        docs = [
            Document("a", "razloži fotosintezo"),
            Document("b", "razloži fotosintezo"),
            Document("c", "kaj je DNK"),
        ]
        kept = list(novelty_filter(docs))
        self.assertEqual([doc.id for doc in kept], ["a", "c"])

    def test_novelty_filter_key(self):
        rows = [{"prompt": "ena dve tri"}, {"prompt": "ena dve tri štiri"}]
        kept = list(novelty_filter(rows, key=lambda row: row["prompt"]))
        self.assertEqual(kept, rows[:1])

    def test_max_rouge_contract(self):
        with self.assertRaises(ContractError):
            list(novelty_filter(["x"], max_rouge=0))


if __name__ == "__main__":
    unittest.main()
