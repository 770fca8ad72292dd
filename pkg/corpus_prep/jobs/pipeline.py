"""Running a configured pipeline stage by stage."""

import json
import os

from corpus_prep import hooks
from corpus_prep.exceptions import CorpusIOError
from corpus_prep.utils import get_attr, log_error, logger, throw


def stage_output(settings, position, name):
    return os.path.join(settings.output_dir, f"{position:02d}_{name}.jsonl")


def run(settings):
    """Run every stage in order, each reading the previous stage's output.

    `settings` must already be validated. Each stage writes its output and a
    `.report.json` next to it; a failing stage's output is removed and the
    error propagates. Returns the list of stage reports.
    """
    log = logger("pipeline")
    runners = [(stage, get_attr(hooks.pipeline_stages[stage.name])) for stage in settings.stages]
    try:
        os.makedirs(settings.output_dir, exist_ok=True)
    except OSError as e:
        throw(f"Cannot create {settings.output_dir}: {e.strerror or e}", CorpusIOError)

    reports = []
    input_path = settings.input
    for position, (stage, runner) in enumerate(runners, start=1):
        output_path = stage_output(settings, position, stage.name)
        log.info(f"Stage {position}/{len(runners)}: {stage.name}")
        try:
            report = runner(input_path, output_path, stage.params, settings)
        except Exception as e:
            _remove_partial(output_path)
            log_error(f"Stage {stage.name} failed: {str(e)}", "pipeline")
            raise

        report = {"input": input_path, "output": output_path, **report}
        write_report(output_path[: -len(".jsonl")] + ".report.json", report)
        reports.append(report)
        input_path = output_path

    summary_path = os.path.join(settings.output_dir, "pipeline_report.json")
    write_report(summary_path, {"seed": settings.seed, "stages": reports})
    return reports


def write_report(path, report):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(report, f, ensure_ascii=False, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        throw(f"Cannot write {path}: {e.strerror or e}", CorpusIOError)


def _remove_partial(output_path):
    base = output_path[: -len(".jsonl")]
    directory = os.path.dirname(output_path) or "."
    for name in os.listdir(directory):
        path = os.path.join(directory, name)
        if path == output_path or path.startswith(base + "."):
            try:
                os.remove(path)
            except OSError as e:
                log_error(f"Cannot remove partial output {path}: {str(e)}", "pipeline")
