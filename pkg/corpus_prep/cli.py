"""corpus-prep command line.

Single-stage commands validate their parameters the same way a pipeline
config does, run the stage runner and write `<output>.report.json` next to
the output. Errors exit with the status carried by the exception.
"""

import logging
import os
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import pandas as pd
import typer

from corpus_prep import hooks
from corpus_prep.core.records import read_records
from corpus_prep.core.report.corpus_stats import corpus_stats
from corpus_prep.core.tokenizer import load_tokenizer
from corpus_prep.evalmetrics.report.translation_quality import translation_quality
from corpus_prep.exceptions import CorpusPrepError
from corpus_prep.jobs import pipeline
from corpus_prep.leaderboard.report.arena_leaderboard import arena_leaderboard
from corpus_prep.leaderboard.report.benchmark_rank import benchmark_rank
from corpus_prep.packer.packing import read_examples
from corpus_prep.packer.verify import verify_pack
from corpus_prep.settings.pipeline_settings.pipeline_settings import (
    PipelineSettings,
    StageConfig,
    load_settings,
)
from corpus_prep.utils import get_attr, logger, set_log_level

app = typer.Typer(add_completion=False, help="Corpus preparation and evaluation toolkit.")

VIOLATIONS_SHOWN = 20


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Log per-document decisions")) -> None:
    set_log_level(logging.DEBUG if verbose else logging.INFO)


@contextmanager
def handle_errors():
    try:
        yield
    except CorpusPrepError as e:
        logger("cli").debug("Command failed", exc_info=True)
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=e.exit_code)


def report_path(output):
    base = output[: -len(".jsonl")] if output.endswith(".jsonl") else output
    return f"{base}.report.json"


def run_stage(name, input_path, output_path, params, seed=1, profiles=None):
    """Validate a one-stage configuration, run it and write its report."""
    params = {key: value for key, value in params.items() if value is not None}
    settings = PipelineSettings(
        input=str(input_path),
        output_dir=os.path.dirname(str(output_path)) or ".",
        seed=seed,
        profiles=list(profiles or []),
        stages=[StageConfig(name=name, params=params)],
    ).validate()

    runner = get_attr(hooks.pipeline_stages[name])
    report = runner(str(input_path), str(output_path), params, settings)
    pipeline.write_report(report_path(str(output_path)), report)
    return report


def echo_summary(report, keys):
    typer.echo("  ".join(f"{key}={report[key]}" for key in keys if key in report))


def echo_table(columns, data):
    """Print report rows under their column labels."""
    frame = pd.DataFrame(
        [[_cell(row.get(column["fieldname"]), column) for column in columns] for row in data],
        columns=[column["label"] for column in columns],
    )
    typer.echo(frame.to_string(index=False) if len(frame) else "(no rows)")


def _cell(value, column):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    precision = column.get("precision", 2)
    if column["fieldtype"] == "Percent":
        return f"{value:.{precision}f}%"
    if column["fieldtype"] == "Float":
        return f"{value:.{precision}f}"
    return value


def write_rows(path, data):
    if path:
        pipeline.write_report(str(path), data)


@app.command("filter")
def filter_cmd(
    input: Path = typer.Argument(..., help="Document records"),
    output: Path = typer.Argument(...),
    config: Optional[Path] = typer.Option(None, "--config", help="Filter config JSON"),
    profile: List[str] = typer.Option([], "--profile", help="Filter profile (repeatable)"),
) -> None:
    """Apply the cleaning filters to every document."""
    with handle_errors():
        params = {"config": str(config) if config else None}
        report = run_stage("filters", input, output, params, profiles=profile)
    echo_summary(report, ("docs_in", "docs_out", "paragraphs_removed", "chars_changed"))


@app.command("dedup")
def dedup_cmd(
    input: Path = typer.Argument(...),
    output: Path = typer.Argument(...),
    threshold: float = typer.Option(0.65, "--threshold"),
    ngram: int = typer.Option(5, "--ngram"),
    group_by: Optional[str] = typer.Option(None, "--group-by", help="Meta key to dedup within"),
    seed: int = typer.Option(1, "--seed"),
) -> None:
    """Remove near-duplicate documents (MinHash LSH)."""
    with handle_errors():
        params = {"threshold": threshold, "ngram": ngram, "group_by": group_by}
        report = run_stage("dedup", input, output, params, seed=seed)
    echo_summary(report, ("docs_in", "docs_out", "removed_pairs"))


@app.command("novelty")
def novelty_cmd(
    input: Path = typer.Argument(..., help="Candidate document records"),
    output: Path = typer.Argument(...),
    pool: Optional[Path] = typer.Option(None, "--pool", help="Existing texts: records or one per line"),
    max_rouge: float = typer.Option(0.7, "--max-rouge"),
) -> None:
    """Keep candidates whose ROUGE-L against everything kept so far stays below the limit."""
    with handle_errors():
        params = {"pool": str(pool) if pool else None, "max_rouge": max_rouge}
        report = run_stage("novelty", input, output, params)
    echo_summary(report, ("docs_in", "docs_out", "pool"))


@app.command("pack")
def pack_cmd(
    input: Path = typer.Argument(...),
    output: Path = typer.Argument(...),
    context_length: int = typer.Option(4096, "--context-length"),
    strategy: str = typer.Option("paragraph", "--strategy", help="sentence, paragraph or section"),
    tokenizer: str = typer.Option("reference", "--tokenizer", help="'reference' or 'hf:<name-or-path>'"),
) -> None:
    """Split, pack and pad documents into fixed-length examples."""
    with handle_errors():
        params = {"context_length": context_length, "strategy": strategy, "tokenizer": tokenizer}
        report = run_stage("pack", input, output, params)
    echo_summary(report, ("documents", "subdocuments", "examples", "efficiency"))


@app.command("verify-pack")
def verify_pack_cmd(
    packed: Path = typer.Argument(..., help="Packed example records"),
    corpus: Path = typer.Argument(..., help="The document records that were packed"),
    context_length: Optional[int] = typer.Option(None, "--context-length"),
    strategy: str = typer.Option("paragraph", "--strategy"),
    tokenizer: str = typer.Option("reference", "--tokenizer"),
    report: Optional[Path] = typer.Option(None, "--report", help="Write the report as JSON"),
) -> None:
    """Check packed examples against their layout rules and the source corpus."""
    with handle_errors():
        result = verify_pack(
            read_examples(str(packed)),
            read_records(str(corpus)),
            load_tokenizer(tokenizer),
            strategy=strategy,
            context_length=context_length,
        )
        write_rows(report, result.as_dict())

    summary = {**result.as_dict(), "violations": len(result.violations)}
    echo_summary(summary, ("examples", "documents", "violations"))
    for violation in result.violations[:VIOLATIONS_SHOWN]:
        line = f"  example {violation['example']}: {violation['violation']} {violation['detail']}"
        typer.echo(line.rstrip())
    if not result.ok:
        raise typer.Exit(code=2)


@app.command("align")
def align_cmd(
    input: Path = typer.Argument(..., help="Pair records, or source documents with --target"),
    output: Path = typer.Argument(...),
    target: Optional[Path] = typer.Option(None, "--target", help="Target documents joined on --key"),
    key: str = typer.Option("pair_id", "--key"),
    mode: str = typer.Option("paragraph", "--mode", help="paragraph, document or separate"),
    order: str = typer.Option("src_first", "--order", help="src_first or tgt_first"),
) -> None:
    """Build bilingual documents from parallel pairs."""
    with handle_errors():
        params = {"target": str(target) if target else None, "key": key, "mode": mode, "order": order}
        report = run_stage("align", input, output, params)
    echo_summary(report, ("mode", "docs_out"))


@app.command("merge-pages")
def merge_pages_cmd(
    input: Path = typer.Argument(..., help="Page records {doc_id, page_index, text, label}"),
    output: Path = typer.Argument(...),
    provider: str = typer.Option("heuristic", "--provider"),
    decisions: Optional[Path] = typer.Option(None, "--decisions", help="Decisions for --provider replay"),
) -> None:
    """Merge per-page OCR output into documents."""
    with handle_errors():
        params = {"provider": provider, "decisions": str(decisions) if decisions else None}
        report = run_stage("merge_pages", input, output, params)
    echo_summary(report, ("docs_out", "actions"))


@app.command("eval-translation")
def eval_translation_cmd(
    pairs: Path = typer.Argument(..., help="Records {id, original, translated, dataset}"),
    scores: Optional[Path] = typer.Option(None, "--scores", help="Score records {id, <name>: value}"),
    detector: Optional[str] = typer.Option(None, "--lang-detector", "--detector", help="Language detector"),
    target_lang: str = typer.Option("sl", "--target-lang"),
    report: Optional[Path] = typer.Option(None, "--report"),
) -> None:
    """Translation error rates, overall and per dataset."""
    with handle_errors():
        filters = {
            "pairs": str(pairs),
            "scores": str(scores) if scores else None,
            "detector": detector,
            "target_lang": target_lang,
        }
        filters["report"] = translation_quality.evaluate(filters)
        columns, data = translation_quality.execute(filters)
        write_rows(report, filters["report"].as_dict())
    echo_table(columns, data)


@app.command("leaderboard")
def leaderboard_cmd(
    votes: Path = typer.Argument(..., help="Vote records {model_a, model_b, outcome, timestamp}"),
    k_factor: float = typer.Option(32, "--k", "--k-factor"),
    initial: float = typer.Option(1000, "--initial"),
    report: Optional[Path] = typer.Option(None, "--report"),
) -> None:
    """Arena ELO leaderboard."""
    with handle_errors():
        filters = {"path": str(votes), "k_factor": k_factor, "initial": initial}
        columns, data = arena_leaderboard.execute(filters)
        write_rows(report, data)
    echo_table(columns, data)


@app.command("rank")
def rank_cmd(
    scores: Path = typer.Argument(..., help="Table with columns benchmark, metric, then one per model"),
    sep: str = typer.Option(",", "--sep"),
    tie_rule: str = typer.Option("fractional", "--tie-rule", help="fractional or competition"),
    report: Optional[Path] = typer.Option(None, "--report"),
) -> None:
    """Average benchmark rank per model."""
    with handle_errors():
        columns, data = benchmark_rank.execute({"path": str(scores), "sep": sep, "tie_rule": tie_rule})
        write_rows(report, data)
    echo_table(columns, data)


@app.command("stats")
def stats_cmd(
    corpora: List[Path] = typer.Argument(..., help="Document or packed record files"),
    tokenizer: str = typer.Option("reference", "--tokenizer"),
    report: Optional[Path] = typer.Option(None, "--report"),
) -> None:
    """Token and document counts per corpus."""
    with handle_errors():
        filters = {"corpora": [str(path) for path in corpora], "tokenizer": tokenizer}
        columns, data = corpus_stats.execute(filters)
        write_rows(report, data)
    echo_table(columns, data)


@app.command("run")
def run_cmd(
    config: Path = typer.Argument(..., help="Pipeline settings JSON"),
    input: Optional[Path] = typer.Option(None, "--input", help="Override the configured input"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="Override the output directory"),
    seed: Optional[int] = typer.Option(None, "--seed"),
) -> None:
    """Run a configured pipeline."""
    with handle_errors():
        settings = load_settings(
            str(config),
            input=str(input) if input else None,
            output_dir=str(output_dir) if output_dir else None,
            seed=seed,
        )
        reports = pipeline.run(settings)
    for report in reports:
        typer.echo(f"{report['stage']}: {report['output']}")


if __name__ == "__main__":
    app()
