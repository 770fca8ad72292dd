"""Arena ELO leaderboard and benchmark average-rank leaderboard."""

from corpus_prep.leaderboard.arena import RatingTable, VoteRecord, compute_leaderboard, elo_update
from corpus_prep.leaderboard.benchmarks import ScoreMatrix, average_rank, read_score_matrix
