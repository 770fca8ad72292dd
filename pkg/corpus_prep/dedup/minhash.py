"""Word shingles, MinHash signatures and the banded LSH index."""

import hashlib

import numpy as np
from datasketch import MinHash, MinHashLSH

from corpus_prep.exceptions import ContractError, EmptySetError, SignatureMismatchError
from corpus_prep.utils import throw

NUM_PERMUTATIONS = 256
BANDS = 32
ROWS_PER_BAND = 8
DEFAULT_NGRAM = 5


def shingle(text, n=DEFAULT_NGRAM):
    """Hashes of all consecutive n-word windows of the lowercased text.

    Texts shorter than n words give a single shingle of the whole text.
    """
    if n < 1:
        throw("Shingle size must be at least 1", ContractError)
    words = text.lower().split()
    if len(words) < n:
        return {_hash64(" ".join(words))}
    return {_hash64(" ".join(words[i : i + n])) for i in range(len(words) - n + 1)}


def minhash(shingles, seed=1, num_perm=NUM_PERMUTATIONS):
    """MinHash signature of a non-empty shingle set."""
    if not shingles:
        throw("Cannot sign an empty shingle set", EmptySetError)
    signature = MinHash(num_perm=num_perm, seed=seed)
    signature.update_batch([value.to_bytes(8, "little") for value in sorted(shingles)])
    return signature


def signature_from_slots(slots, seed=1):
    """Rebuild a signature from stored slot values."""
    signature = MinHash(num_perm=len(slots), seed=seed)
    signature.hashvalues = np.array(slots, dtype=np.uint64)
    return signature


def estimate_jaccard(a, b):
    """Fraction of equal slots of two signatures built with the same parameters."""
    try:
        return float(a.jaccard(b))
    except ValueError as e:
        throw(f"Signatures are not comparable: {e}", SignatureMismatchError)


class LshIndex:
    """Banded LSH over 256-slot signatures: 32 bands of 8 rows.

    Two signatures are candidates when they agree on every row of at least one
    band; the banding puts the similarity threshold near (1/32) ** (1/8) ~ 0.648.
    """

    def __init__(self, num_perm=NUM_PERMUTATIONS, bands=BANDS, rows_per_band=ROWS_PER_BAND):
        if bands * rows_per_band != num_perm:
            throw("bands x rows_per_band must equal the number of permutations", ContractError)
        self.num_perm = num_perm
        self.bands = bands
        self.rows_per_band = rows_per_band
        self.signatures = {}
        self._lsh = MinHashLSH(num_perm=num_perm, params=(bands, rows_per_band))

    def __len__(self):
        return len(self.signatures)

    def __contains__(self, key):
        return key in self.signatures

    def insert(self, key, signature):
        if key in self.signatures:
            throw(f"Key {key!r} is already indexed", ContractError)
        if len(signature.hashvalues) != self.num_perm:
            throw(
                f"Signature has {len(signature.hashvalues)} slots, index expects {self.num_perm}",
                SignatureMismatchError,
            )
        self._lsh.insert(key, signature)
        self.signatures[key] = signature

    def query(self, signature):
        """Keys sharing at least one band bucket with the signature."""
        return list(self._lsh.query(signature))

    def merge(self, other):
        """New index holding the entries of both; keys must not overlap."""
        if _banding(other) != _banding(self):
            throw("Cannot merge indexes with different banding", SignatureMismatchError)
        merged = LshIndex(self.num_perm, self.bands, self.rows_per_band)
        for index in (self, other):
            for key, signature in index.signatures.items():
                merged.insert(key, signature)
        return merged


def lsh_threshold(bands=BANDS, rows_per_band=ROWS_PER_BAND):
    """Approximate similarity at which the candidate probability crosses one half."""
    return (1 / bands) ** (1 / rows_per_band)


def _banding(index):
    return index.num_perm, index.bands, index.rows_per_band


def _hash64(text):
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "little")
