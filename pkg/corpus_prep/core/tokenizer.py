"""Tokenizer interface plus the built-in byte-level reference tokenizer."""

from typing import Protocol, runtime_checkable

from corpus_prep import hooks
from corpus_prep.exceptions import ConfigurationError
from corpus_prep.utils import get_attr, throw


@runtime_checkable
class TokenizerInterface(Protocol):
    """What the packer needs from a tokenizer.

    encode must not add BOS/EOS itself; the packer places them.
    """

    bos_id: int
    eos_id: int
    vocab_size: int

    def encode(self, text: str) -> list[int]: ...

    def decode(self, token_ids: list[int]) -> str: ...


class ByteTokenizer:
    """One token per UTF-8 byte, ids offset by 3.

    Ids 0-2 are reserved: 1 is BOS, 2 is EOS (also used as padding).
    decode(encode(t)) == t for every valid unicode string.
    """

    OFFSET = 3
    bos_id = 1
    eos_id = 2
    pad_id = 2
    vocab_size = 256 + OFFSET

    def encode(self, text):
        return [byte + self.OFFSET for byte in text.encode("utf-8")]

    def decode(self, token_ids):
        data = bytes(token_id - self.OFFSET for token_id in token_ids if token_id >= self.OFFSET)
        return data.decode("utf-8", errors="replace")

    def __repr__(self):
        return "ByteTokenizer()"


class HuggingFaceTokenizer:
    """Adapter around a `tokenizers.Tokenizer` loaded from a file or the Hub."""

    def __init__(self, name_or_path, bos_token="<bos>", eos_token="<eos>"):
        try:
            from tokenizers import Tokenizer
        except ImportError:
            throw("External tokenizers need the 'hf' extra: pip install corpus-prep[hf]", ConfigurationError)

        if name_or_path.endswith(".json"):
            self._tokenizer = Tokenizer.from_file(name_or_path)
        else:
            self._tokenizer = Tokenizer.from_pretrained(name_or_path)

        self.name = name_or_path
        self.bos_id = self._token_id(bos_token)
        self.eos_id = self._token_id(eos_token)
        self.vocab_size = self._tokenizer.get_vocab_size()
        if self.bos_id == self.eos_id:
            throw(f"{name_or_path}: BOS and EOS resolve to the same id", ConfigurationError)

    def _token_id(self, token):
        token_id = self._tokenizer.token_to_id(token)
        if token_id is None:
            throw(f"{self.name}: special token {token!r} is not in the vocabulary", ConfigurationError)
        return token_id

    def encode(self, text):
        return self._tokenizer.encode(text, add_special_tokens=False).ids

    def decode(self, token_ids):
        return self._tokenizer.decode(token_ids, skip_special_tokens=False)

    def __repr__(self):
        return f"HuggingFaceTokenizer({self.name!r})"


def load_tokenizer(spec="reference", **options):
    """Build a tokenizer from a spec: `reference` or `hf:<name-or-path>`."""
    kind, _, argument = spec.partition(":")
    if kind not in hooks.tokenizers:
        throw(f"Unknown tokenizer spec: {spec}", ConfigurationError)
    tokenizer_class = get_attr(hooks.tokenizers[kind])
    if kind == "reference":
        if argument:
            throw("The reference tokenizer takes no argument", ConfigurationError)
        return tokenizer_class()
    if not argument:
        throw(f"Tokenizer spec {spec!r} needs a name or path", ConfigurationError)
    return tokenizer_class(argument, **options)
