"""Page-merge decision providers.

A provider labels pages and decides each page boundary. The heuristic
provider applies local rules; the replay provider reads decisions prepared
elsewhere (for example by a language model) and defers to the heuristic
provider for boundaries it has no record for.
"""

from collections import defaultdict, deque

from corpus_prep import hooks
from corpus_prep.core.records import read_jsonl
from corpus_prep.exceptions import ConfigurationError, RecordParseError
from corpus_prep.pagemerge.heuristics import classify_page, decide_merge
from corpus_prep.pagemerge.pages import MergeAction
from corpus_prep.utils import get_attr, throw


class HeuristicMergeProvider:
    name = "heuristic"

    def classify(self, page, running=frozenset()):
        return classify_page(page, running)

    def decide(self, doc_id, left, right, last_par, first_par, running=frozenset()):
        return decide_merge(last_par, first_par, running)


class ReplayMergeProvider:
    """Replays recorded boundary decisions {doc_id, left, right, action}.

    A boundary may carry several records; they are used in file order, one per
    decision taken at that boundary.
    """

    name = "replay"

    def __init__(self, records=None, path=None, fallback=None):
        self.fallback = fallback or HeuristicMergeProvider()
        self.decisions = defaultdict(deque)
        if path:
            records = (record for _, record in read_jsonl(path))
        for i, record in enumerate(records or [], start=1):
            try:
                key = (record["doc_id"], int(record["left"]), int(record["right"]))
                action = MergeAction(record["action"])
            except (KeyError, TypeError, ValueError) as e:
                raise RecordParseError(f"Invalid merge decision record {i}: {e}", line_number=i)
            self.decisions[key].append(action)

    def classify(self, page, running=frozenset()):
        return self.fallback.classify(page, running)

    def decide(self, doc_id, left, right, last_par, first_par, running=frozenset()):
        queue = self.decisions.get((doc_id, left, right))
        if queue:
            return queue.popleft()
        return self.fallback.decide(doc_id, left, right, last_par, first_par, running)


def load_merge_provider(name="heuristic", path=None):
    """Build a registered merge provider; `replay` needs a decisions file."""
    if name not in hooks.merge_providers:
        throw(f"Unknown merge provider: {name}", ConfigurationError)
    provider_class = get_attr(hooks.merge_providers[name])
    if provider_class is ReplayMergeProvider:
        if not path:
            throw("The replay provider needs a decisions file", ConfigurationError)
        return provider_class(path=path)
    return provider_class()
