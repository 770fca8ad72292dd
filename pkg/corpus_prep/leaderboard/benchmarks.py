"""Average-rank leaderboard over a benchmark score matrix."""

from dataclasses import dataclass, field

import pandas as pd

from corpus_prep.exceptions import ConfigurationError, CorpusIOError, ShapeError
from corpus_prep.utils import throw

TIE_RULES = {"fractional": "average", "competition": "min"}
KEY_COLUMNS = ("benchmark", "metric")


@dataclass
class ScoreMatrix:
    """Scores of every model on every (benchmark, metric) row; higher is better."""

    benchmarks: list = field(default_factory=list)
    models: list = field(default_factory=list)
    scores: list = field(default_factory=list)

    def validate(self):
        """The matrix must be rectangular with every score present."""
        if not self.benchmarks or not self.models:
            throw("Score matrix needs at least one benchmark and one model", ShapeError)
        if len(self.scores) != len(self.benchmarks):
            throw(f"{len(self.scores)} score rows for {len(self.benchmarks)} benchmarks", ShapeError)
        if len(set(self.models)) != len(self.models):
            throw("Model names must be unique", ShapeError)
        for (name, metric), row in zip(self.benchmarks, self.scores):
            if len(row) != len(self.models):
                throw(f"{name} {metric}: {len(row)} scores for {len(self.models)} models", ShapeError)
            if any(score is None or pd.isna(score) for score in row):
                throw(f"{name} {metric}: missing score", ShapeError)
        return self

    def to_frame(self):
        index = pd.MultiIndex.from_tuples([tuple(b) for b in self.benchmarks], names=list(KEY_COLUMNS))
        return pd.DataFrame(self.scores, index=index, columns=list(self.models), dtype=float)

    @classmethod
    def from_frame(cls, frame):
        missing = [column for column in KEY_COLUMNS if column not in frame.columns]
        if missing:
            throw(f"Score table is missing column(s): {', '.join(missing)}", ShapeError)
        models = [column for column in frame.columns if column not in KEY_COLUMNS]
        try:
            scores = frame[models].apply(pd.to_numeric).values.tolist()
        except (TypeError, ValueError) as e:
            throw(f"Score table has a non-numeric score: {e}", ShapeError)
        return cls(
            benchmarks=list(zip(frame["benchmark"].astype(str), frame["metric"].astype(str))),
            models=models,
            scores=scores,
        ).validate()


def read_score_matrix(path, sep=","):
    """Read a delimited table with columns benchmark, metric, then one column per model."""
    try:
        frame = pd.read_csv(path, sep=sep)
    except OSError as e:
        throw(f"Cannot read {path}: {e.strerror or e}", CorpusIOError)
    except pd.errors.ParserError as e:
        throw(f"{path}: malformed score table: {e}", ShapeError)
    return ScoreMatrix.from_frame(frame)


def rank_matrix(matrix, tie_rule="fractional"):
    """Per-row ranks (1 = best score)."""
    if tie_rule not in TIE_RULES:
        throw(f"Unknown tie rule: {tie_rule}", ConfigurationError)
    matrix.validate()
    return matrix.to_frame().rank(axis=1, ascending=False, method=TIE_RULES[tie_rule])


def average_rank(matrix, tie_rule="fractional"):
    """Models ordered by their mean rank over all benchmark rows, lowest (best) first."""
    averages = rank_matrix(matrix, tie_rule).mean(axis=0)
    ordered = sorted(matrix.models, key=lambda model: (averages[model], matrix.models.index(model)))
    return [
        {"rank": rank, "model": model, "average": float(averages[model])}
        for rank, model in enumerate(ordered, start=1)
    ]
