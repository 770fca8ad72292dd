"""Pipeline Settings controller."""

import json
import os
from dataclasses import dataclass, field

from corpus_prep import hooks
from corpus_prep.exceptions import ConfigurationError, CorpusIOError
from corpus_prep.filters.pipeline import load_filter_config
from corpus_prep.utils import throw


def _number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _integer(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _text(value):
    return isinstance(value, str) and bool(value)


# stage -> parameter -> (check, requirement shown in the error)
STAGE_PARAMS = {
    "filters": {
        "filters": (lambda v: isinstance(v, list), "a list of filter names or {name, params} entries"),
        "mojibake": (lambda v: isinstance(v, dict), "a {garbled: intended} map"),
        "diacritics": (lambda v: isinstance(v, dict), "a {wrong: right} map"),
        "config": (_text, "a path to a filter config file"),
    },
    "dedup": {
        "threshold": (lambda v: _number(v) and 0 < v < 1, "a number strictly between 0 and 1"),
        "ngram": (lambda v: _integer(v) and v >= 1, "an integer of at least 1"),
        "group_by": (_text, "a meta key"),
    },
    "novelty": {
        "max_rouge": (lambda v: _number(v) and 0 < v <= 1, "a number in (0, 1]"),
        "pool": (_text, "a path to a pool file"),
    },
    "align": {
        "mode": (lambda v: v in ("paragraph", "document", "separate"), "paragraph, document or separate"),
        "order": (lambda v: v in ("src_first", "tgt_first"), "src_first or tgt_first"),
        "target": (_text, "a path to the target record file"),
        "key": (_text, "a meta key"),
    },
    "merge_pages": {
        "provider": (lambda v: v in hooks.merge_providers, f"one of {', '.join(hooks.merge_providers)}"),
        "decisions": (_text, "a path to a decisions file"),
    },
    "pack": {
        "context_length": (lambda v: _integer(v) and v >= 8, "an integer of at least 8"),
        "strategy": (lambda v: v in ("sentence", "paragraph", "section"), "sentence, paragraph or section"),
        "tokenizer": (_text, "a tokenizer spec such as 'reference' or 'hf:<name>'"),
    },
}


@dataclass
class StageConfig:
    name: str
    params: dict = field(default_factory=dict)


@dataclass
class PipelineSettings:
    """Settings of one pipeline run: input, output directory, seed, profiles and stages."""

    input: str
    output_dir: str
    seed: int = 1
    profiles: list = field(default_factory=list)
    stages: list = field(default_factory=list)

    def validate(self):
        """Validate pipeline settings; nothing is read from the input corpus."""
        self.validate_seed()
        self.validate_profiles()
        self.validate_stages()
        self.validate_stage_params()
        self.validate_ordering()
        self.validate_paths()
        return self

    def validate_paths(self):
        """Input must exist; the output directory must not be a file."""
        if not _text(self.input) or not _text(self.output_dir):
            throw("Settings need 'input' and 'output_dir' paths", ConfigurationError)
        if not os.path.isfile(self.input):
            throw(f"Input corpus not found: {self.input}", CorpusIOError)
        if os.path.exists(self.output_dir) and not os.path.isdir(self.output_dir):
            throw(f"Output path is not a directory: {self.output_dir}", CorpusIOError)

    def validate_seed(self):
        if not _integer(self.seed):
            throw(f"Seed must be an integer, got {self.seed!r}", ConfigurationError)

    def validate_profiles(self):
        for profile in self.profiles:
            if profile not in hooks.filter_profiles:
                throw(f"Unknown filter profile: {profile}", ConfigurationError)

    def validate_stages(self):
        """Every stage must be registered."""
        if not self.stages:
            throw("Pipeline has no stages", ConfigurationError)
        for stage in self.stages:
            if stage.name not in hooks.pipeline_stages:
                throw(f"Unknown stage: {stage.name}", ConfigurationError)

    def validate_stage_params(self):
        """Parameter names and values must match the stage contract."""
        for stage in self.stages:
            schema = STAGE_PARAMS.get(stage.name, {})
            for key, value in stage.params.items():
                if key not in schema:
                    throw(f"Stage {stage.name}: unknown parameter '{key}'", ConfigurationError)
                check, requirement = schema[key]
                if not check(value):
                    message = f"Stage {stage.name}: '{key}' must be {requirement}, got {value!r}"
                    throw(message, ConfigurationError)
            self.validate_stage_dependencies(stage)

    def validate_stage_dependencies(self, stage):
        """Cross-parameter checks and lookups that need no corpus data."""
        if stage.name == "filters":
            config = stage.params.get("config") or {
                key: value for key, value in stage.params.items() if key != "config"
            }
            load_filter_config(config, profiles=self.profiles)
        elif stage.name == "merge_pages":
            if stage.params.get("provider") == "replay" and not stage.params.get("decisions"):
                throw("Stage merge_pages: the replay provider needs 'decisions'", ConfigurationError)
        elif stage.name == "pack":
            kind, _, argument = stage.params.get("tokenizer", "reference").partition(":")
            if kind not in hooks.tokenizers or (kind != "reference") != bool(argument):
                throw(f"Stage pack: invalid tokenizer spec {stage.params['tokenizer']!r}", ConfigurationError)

    def validate_ordering(self):
        """Source stages come first; nothing follows a terminal stage."""
        for position, stage in enumerate(self.stages):
            if stage.name in hooks.source_stages and position != 0:
                throw(f"Stage {stage.name} reads raw input and must be the first stage", ConfigurationError)
            if stage.name in hooks.terminal_stages and position != len(self.stages) - 1:
                throw(f"Stage {stage.name} must be the last stage", ConfigurationError)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            throw("Pipeline settings must be an object", ConfigurationError)
        unknown = set(data) - {"input", "output_dir", "seed", "profiles", "stages"}
        if unknown:
            throw(f"Unknown settings key(s): {', '.join(sorted(unknown))}", ConfigurationError)

        stages = []
        for entry in data.get("stages") or []:
            if isinstance(entry, str):
                entry = {"name": entry}
            if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
                throw(f"Invalid stage entry: {entry!r}", ConfigurationError)
            params = entry.get("params") or {}
            if not isinstance(params, dict):
                throw(f"Stage {entry['name']}: params must be an object", ConfigurationError)
            stages.append(StageConfig(name=entry["name"], params=dict(params)))

        return cls(
            input=data.get("input"),
            output_dir=data.get("output_dir"),
            seed=data.get("seed", 1),
            profiles=list(data.get("profiles") or []),
            stages=stages,
        )


def load_settings(path, **overrides):
    """Read and validate pipeline settings from a JSON file; `overrides` replace top-level keys."""
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        throw(f"Cannot read settings {path}: {e.strerror or e}", CorpusIOError)
    except json.JSONDecodeError as e:
        throw(f"Settings file is not valid JSON: {e.msg} (line {e.lineno})", ConfigurationError)
    if isinstance(data, dict):
        data.update({key: value for key, value in overrides.items() if value is not None})
    return PipelineSettings.from_dict(data).validate()
