"""Arena Leaderboard Report.

Rank, ELO score, win rate and vote count per model from an ordered vote log.
"""

from corpus_prep.leaderboard.arena import DEFAULT_INITIAL, DEFAULT_K, compute_leaderboard, read_votes

UNDEFINED = "—"


def execute(filters=None):
    """Execute the Arena Leaderboard Report."""
    filters = filters or {}
    columns = get_columns()
    data = get_data(filters)

    return columns, data


def get_columns():
    """Get report columns."""
    return [
        {"label": "Rank", "fieldname": "rank", "fieldtype": "Int", "width": 60},
        {"label": "Model", "fieldname": "model", "fieldtype": "Data", "width": 220},
        {"label": "ELO Score", "fieldname": "rating", "fieldtype": "Float", "precision": 0, "width": 100},
        {"label": "Win Rate", "fieldname": "win_rate", "fieldtype": "Percent", "width": 100},
        {"label": "Total Votes", "fieldname": "total", "fieldtype": "Int", "width": 100},
    ]


def get_data(filters):
    """Get report data from `votes` (VoteRecords) or a `path` to a vote log."""
    votes = filters.get("votes")
    if votes is None:
        votes = read_votes(filters["path"])
    rows, _ = compute_leaderboard(
        votes,
        k_factor=filters.get("k_factor", DEFAULT_K),
        initial=filters.get("initial", DEFAULT_INITIAL),
    )

    return [
        {
            "rank": row["rank"],
            "model": row["model"],
            "rating": round(row["rating"]),
            "win_rate": UNDEFINED if row["win_rate"] is None else f"{row['win_rate'] * 100:.1f}%",
            "total": row["total"],
        }
        for row in rows
    ]
