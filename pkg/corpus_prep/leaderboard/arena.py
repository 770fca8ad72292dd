"""Arena leaderboard: sequential ELO ratings and win rates from pairwise votes."""

from dataclasses import dataclass, field

from corpus_prep.core.records import read_jsonl
from corpus_prep.exceptions import ConfigurationError, InvalidVoteError, RecordParseError
from corpus_prep.utils import throw

OUTCOMES = ("a_wins", "b_wins", "tie", "both_bad")
DEFAULT_K = 32
DEFAULT_INITIAL = 1000
OUTCOME_COUNTS = ("wins", "losses", "ties", "both_bad")


@dataclass
class VoteRecord:
    """One arena comparison of two anonymous model responses."""

    model_a: str
    model_b: str
    outcome: str
    timestamp: object = None

    def validate(self):
        """A model cannot be compared with itself; outcome must be known."""
        if not self.model_a or not self.model_b:
            throw("Vote must name both models", InvalidVoteError)
        if self.model_a == self.model_b:
            throw(f"Vote compares {self.model_a} with itself", InvalidVoteError)
        if self.outcome not in OUTCOMES:
            throw(f"Unknown vote outcome: {self.outcome!r}", InvalidVoteError)
        return self


@dataclass
class RatingTable:
    ratings: dict = field(default_factory=dict)
    k_factor: float = DEFAULT_K
    initial: float = DEFAULT_INITIAL
    counts: dict = field(default_factory=dict)

    def validate(self):
        if self.k_factor <= 0:
            throw(f"k_factor must be positive, got {self.k_factor}", ConfigurationError)
        return self

    def copy(self):
        return RatingTable(
            ratings=dict(self.ratings),
            k_factor=self.k_factor,
            initial=self.initial,
            counts={model: dict(counts) for model, counts in self.counts.items()},
        )

    def add_model(self, model):
        if model not in self.ratings:
            self.ratings[model] = float(self.initial)
            self.counts[model] = {name: 0 for name in (*OUTCOME_COUNTS, "total")}


def expected_score(rating_a, rating_b):
    return 1 / (1 + 10 ** ((rating_b - rating_a) / 400))


def elo_update(ratings, vote):
    """Return a new RatingTable with one vote applied; both_bad rates as a tie."""
    ratings.validate()
    vote.validate()
    table = ratings.copy()
    _apply(table, vote)
    return table


def compute_leaderboard(votes, k_factor=DEFAULT_K, initial=DEFAULT_INITIAL):
    """Fold votes in timestamp order; returns (rows sorted by rating, RatingTable).

    Win rate is wins / (wins + losses); ties and both_bad votes are left out
    and the rate is None when a model has neither wins nor losses.
    """
    table = RatingTable(k_factor=k_factor, initial=initial).validate()
    votes = [vote.validate() for vote in votes]
    kinds = {_timestamp_kind(vote.timestamp) for vote in votes} - {None}
    if len(kinds) > 1:
        throw(f"Vote timestamps mix {' and '.join(sorted(kinds))}; use one kind", InvalidVoteError)
    for vote in sorted(votes, key=lambda v: (v.timestamp is None, v.timestamp)):
        _apply(table, vote)

    rows = []
    for model, rating in table.ratings.items():
        counts = table.counts[model]
        decided = counts["wins"] + counts["losses"]
        rows.append(
            {
                "model": model,
                "rating": rating,
                "win_rate": counts["wins"] / decided if decided else None,
                **counts,
            }
        )
    rows.sort(key=lambda row: (-row["rating"], row["model"]))
    for rank, row in enumerate(rows, start=1):
        row["rank"] = rank
    return rows, table


def read_votes(path):
    """Stream votes from records {model_a, model_b, outcome, timestamp}."""
    for line_number, row in read_jsonl(path):
        try:
            yield VoteRecord(
                model_a=row["model_a"],
                model_b=row["model_b"],
                outcome=row["outcome"],
                timestamp=row.get("timestamp"),
            ).validate()
        except (KeyError, TypeError) as e:
            raise RecordParseError(f"{path}:{line_number}: invalid vote record: {e}", line_number=line_number)


def _apply(table, vote):
    table.add_model(vote.model_a)
    table.add_model(vote.model_b)

    score_a = {"a_wins": 1.0, "b_wins": 0.0}.get(vote.outcome, 0.5)
    expected_a = expected_score(table.ratings[vote.model_a], table.ratings[vote.model_b])
    delta = table.k_factor * (score_a - expected_a)
    table.ratings[vote.model_a] += delta
    table.ratings[vote.model_b] -= delta

    counts_a = table.counts[vote.model_a]
    counts_b = table.counts[vote.model_b]
    if vote.outcome == "a_wins":
        counts_a["wins"] += 1
        counts_b["losses"] += 1
    elif vote.outcome == "b_wins":
        counts_a["losses"] += 1
        counts_b["wins"] += 1
    elif vote.outcome == "tie":
        counts_a["ties"] += 1
        counts_b["ties"] += 1
    else:
        counts_a["both_bad"] += 1
        counts_b["both_bad"] += 1
    counts_a["total"] += 1
    counts_b["total"] += 1


def _timestamp_kind(timestamp):
    if timestamp is None:
        return None
    if isinstance(timestamp, (int, float)) and not isinstance(timestamp, bool):
        return "numbers"
    if isinstance(timestamp, str):
        return "strings"
    throw(f"Unsupported vote timestamp: {timestamp!r}", InvalidVoteError)
