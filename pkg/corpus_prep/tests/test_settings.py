"""Unit tests for pipeline settings validation."""

import json
import os
import tempfile
import unittest

from corpus_prep.core.document import Document
from corpus_prep.core.records import write_records
from corpus_prep.exceptions import ConfigurationError, CorpusIOError
from corpus_prep.settings.pipeline_settings import pipeline_settings
from corpus_prep.settings.pipeline_settings.pipeline_settings import PipelineSettings, load_settings


class TestPipelineSettings(unittest.TestCase):
    """Test settings validation before any corpus data is read."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.input = os.path.join(self.tmp.name, "corpus.jsonl")
        write_records(self.input, [Document("a", "besedilo")])
        self.output_dir = os.path.join(self.tmp.name, "out")

    def tearDown(self):
        self.tmp.cleanup()

    def settings(self, stages, **data):
        return PipelineSettings.from_dict(
            {"input": self.input, "output_dir": self.output_dir, "stages": stages, **data}
        )

    def assertInvalid(self, stages, exc=ConfigurationError, **data):
        with self.assertRaises(exc):
            self.settings(stages, **data).validate()

    def test_valid_settings(self):
        settings = self.settings(
            ["filters", {"name": "dedup", "params": {"threshold": 0.65}}, {"name": "pack", "params": {}}],
            profiles=["nanonets"],
        ).validate()

        self.assertEqual([stage.name for stage in settings.stages], ["filters", "dedup", "pack"])
        self.assertEqual(settings.stages[1].params, {"threshold": 0.65})
        self.assertEqual(settings.seed, 1)

    def test_unknown_stage(self):
        self.assertInvalid(["foo"])

    def test_no_stages(self):
        self.assertInvalid([])

    def test_parameter_values(self):
        self.assertInvalid([{"name": "dedup", "params": {"threshold": 1.5}}])
        self.assertInvalid([{"name": "dedup", "params": {"threshold": True}}])
        self.assertInvalid([{"name": "dedup", "params": {"ngram": 0}}])
        self.assertInvalid([{"name": "pack", "params": {"context_length": 7}}])
        self.assertInvalid([{"name": "align", "params": {"mode": "sentence"}}])
        self.assertInvalid([{"name": "novelty", "params": {"max_rouge": 0}}])

    def test_unknown_parameter(self):
        self.assertInvalid([{"name": "dedup", "params": {"treshold": 0.5}}])

    def test_filter_config_checked(self):
        self.assertInvalid([{"name": "filters", "params": {"filters": ["remove_tables"]}}])
        self.assertInvalid(["filters"], profiles=["unknown"])

    def test_stage_dependencies(self):
        self.assertInvalid([{"name": "merge_pages", "params": {"provider": "replay"}}])
        self.assertInvalid([{"name": "pack", "params": {"tokenizer": "hf"}}])
        self.assertInvalid([{"name": "pack", "params": {"tokenizer": "reference:x"}}])

    def test_stage_order(self):
        self.assertInvalid(["pack", "dedup"])
        self.assertInvalid(["filters", "align"])
        self.settings(["merge_pages", "filters", "pack"]).validate()

    def test_seed(self):
        self.assertInvalid(["dedup"], seed="1")

    def test_paths(self):
        self.assertInvalid(["dedup"], exc=CorpusIOError, input=self.input + ".missing")
        self.assertInvalid(["dedup"], exc=CorpusIOError, output_dir=self.input)
        self.assertInvalid(["dedup"], input=None)

    def test_from_dict_errors(self):
        with self.assertRaises(ConfigurationError):
            PipelineSettings.from_dict({"input": self.input, "stage": ["dedup"]})
        with self.assertRaises(ConfigurationError):
            PipelineSettings.from_dict({"stages": [{"params": {}}]})
        with self.assertRaises(ConfigurationError):
            PipelineSettings.from_dict({"stages": [{"name": "dedup", "params": [1]}]})
        with self.assertRaises(ConfigurationError):
            PipelineSettings.from_dict(["dedup"])


class TestLoadSettings(unittest.TestCase):
    """Test reading settings files."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.input = os.path.join(self.tmp.name, "corpus.jsonl")
        write_records(self.input, [Document("a", "besedilo")])

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, content):
        path = os.path.join(self.tmp.name, "settings.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write(content if isinstance(content, str) else json.dumps(content))
        return path

    def test_overrides(self):
        path = self.write({"input": "missing.jsonl", "output_dir": "out", "seed": 3, "stages": ["dedup"]})
        settings = load_settings(path, input=self.input, output_dir=self.tmp.name, seed=None)

        self.assertEqual(settings.input, self.input)
        self.assertEqual(settings.output_dir, self.tmp.name)
        self.assertEqual(settings.seed, 3)

    def test_invalid_json(self):
        with self.assertRaises(ConfigurationError):
            load_settings(self.write("{stages: }"))

    def test_missing_file(self):
        with self.assertRaises(CorpusIOError):
            load_settings(os.path.join(self.tmp.name, "nothing.json"))

    def test_shipped_example_is_well_formed(self):
        """Test the example settings file next to the controller parses into known stages."""
        example = os.path.join(os.path.dirname(pipeline_settings.__file__), "pipeline_settings.json")
        with open(example, encoding="utf-8") as f:
            data = json.load(f)
        data["input"] = self.input
        data["output_dir"] = self.tmp.name
        settings = PipelineSettings.from_dict(data).validate()
        self.assertEqual(settings.stages[-1].name, "pack")


if __name__ == "__main__":
    unittest.main()
