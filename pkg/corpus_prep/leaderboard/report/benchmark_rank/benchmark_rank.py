"""Benchmark Rank Report.

Average rank of every model over all benchmark metrics (lower is better).
"""

from corpus_prep.leaderboard.benchmarks import average_rank, read_score_matrix


def execute(filters=None):
    """Execute the Benchmark Rank Report."""
    filters = filters or {}
    columns = get_columns()
    data = get_data(filters)

    return columns, data


def get_columns():
    """Get report columns."""
    return [
        {"label": "Rank", "fieldname": "rank", "fieldtype": "Int", "width": 60},
        {"label": "Model", "fieldname": "model", "fieldtype": "Data", "width": 220},
        {"label": "Average rank", "fieldname": "average", "fieldtype": "Float", "width": 120},
    ]


def get_data(filters):
    """Get report data from a `matrix` or a `path` to a score table."""
    matrix = filters.get("matrix") or read_score_matrix(filters["path"], sep=filters.get("sep", ","))
    ranking = average_rank(matrix, tie_rule=filters.get("tie_rule", "fractional"))

    return [{**row, "average": round(row["average"], 2)} for row in ranking]
