"""ROUGE-L similarity and the novelty filter for generated instructions."""

from corpus_prep.exceptions import ContractError
from corpus_prep.utils import logger, throw


def lcs_length(a, b):
    """Length of the longest common subsequence of two token lists."""
    if len(a) < len(b):
        a, b = b, a
    previous = [0] * (len(b) + 1)
    for token in a:
        current = [0]
        for j, other in enumerate(b, start=1):
            if token == other:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def rouge_l(candidate, reference):
    """ROUGE-L F1 over whitespace tokens; 0.0 when either side is empty."""
    cand_tokens = candidate.split()
    ref_tokens = reference.split()
    if not cand_tokens or not ref_tokens:
        return 0.0

    lcs = lcs_length(cand_tokens, ref_tokens)
    if not lcs:
        return 0.0
    precision = lcs / len(cand_tokens)
    recall = lcs / len(ref_tokens)
    return 2 * precision * recall / (precision + recall)


def novelty_filter(candidates, pool=None, max_rouge=0.7, key=None):
    """Yield candidates whose ROUGE-L against the pool stays below max_rouge.

    Kept candidates join the pool. `key` extracts the text from a candidate
    (documents are handled without one).
    """
    if not 0 < max_rouge <= 1:
        throw("max_rouge must lie in (0, 1]", ContractError)
    log = logger("novelty")
    seen = list(pool or [])
    for candidate in candidates:
        text = _text_of(candidate, key)
        score = max((rouge_l(text, other) for other in seen), default=0.0)
        if score >= max_rouge:
            log.debug(f"Rejected candidate (rouge-l {score:.3f}): {text[:60]!r}")
            continue
        seen.append(text)
        yield candidate


def _text_of(candidate, key):
    if key is not None:
        return key(candidate)
    return candidate if isinstance(candidate, str) else candidate.text
