from __future__ import absolute_import, annotations

import os
import shutil
import tempfile
from fractions import Fraction
from unittest import TestCase, skipUnless
from unittest.mock import patch

from cli.pipeline import STAGES, SUMMARY_CLAIM, Pipeline, PipelineConfig
from common.errors import ConfigurationError
from interval.enclosure import Enclosure
from rangecert.certificate import Certificate


LONG_TESTS = os.getenv("SINGULAR_LONG_TESTS") == "1"


def _scan_certificate(stage: str, bound: int, cap: int) -> Certificate:
    return Certificate(stage, {}, [], Enclosure.point(bound), Fraction(cap + 1))


class TestPipelineConfig(TestCase):

    def test_stage_order(self):
        config = PipelineConfig(["exclude", "constants", "high-cert"], 2, 1000, "out")
        self.assertEqual(["constants", "high-cert", "exclude"], config.stages)

    def test_unknown_stage(self):
        with self.assertRaises(ConfigurationError):
            PipelineConfig(["constants", "bogus"], 2, 1000, "out")
        with self.assertRaises(ConfigurationError):
            PipelineConfig([], 2, 1000, "out")
        with self.assertRaises(ConfigurationError):
            PipelineConfig(["constants"], 0, 1000, "out")

    def test_build_from_env(self):
        with patch.dict(os.environ, {"SINGULAR_THREADS": "3", "SINGULAR_BLOCK_SIZE": "4096",
                                     "SINGULAR_OUTPUT_DIR": "/tmp/certs"}):
            config = PipelineConfig.build_from_env()
        self.assertEqual(list(STAGES), config.stages)
        self.assertEqual(3, config.threads)
        self.assertEqual(4096, config.block_size)
        self.assertEqual("/tmp/certs", config.output_dir)

    def test_explicit_values_win(self):
        with patch.dict(os.environ, {"SINGULAR_THREADS": "3"}):
            config = PipelineConfig.build_from_env(["constants"], threads=5, output_dir="here")
        self.assertEqual(5, config.threads)
        self.assertEqual("here", config.output_dir)

    def test_repr(self):
        config = PipelineConfig(["constants", "exclude"], 2, 1000, "out", emit_csv=True, desk_scale=True)
        self.assertEqual(config, PipelineConfig.from_repr(config.to_repr()))
        self.assertTrue(config.to_repr()["deskScale"])


class TestPipeline(TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def _config(self, stages, desk_scale=False) -> PipelineConfig:
        return PipelineConfig(stages, 1, 1 << 20, self.directory, desk_scale=desk_scale)

    def test_quick_stages(self):
        outcome = Pipeline(self._config(["constants", "high-cert", "mid-cert"])).run()
        self.assertTrue(outcome.verified)
        self.assertEqual(0, outcome.exit_code)
        stages = [certificate.stage for certificate in outcome.certificates]
        self.assertEqual(["robin", "constants", "high", "mid-upper", "mid-lower", "summary"], stages)
        for stage in stages:
            self.assertTrue(os.path.exists(os.path.join(self.directory, f"{stage}.cert.json")))
        summary = outcome.certificate("summary")
        self.assertTrue(summary.verified)
        self.assertTrue(summary.partial)
        self.assertNotIn(SUMMARY_CLAIM, summary.notes)

    def test_deterministic_certificates(self):
        first = Pipeline(self._config(["constants", "high-cert"])).run()
        second = Pipeline(self._config(["constants", "high-cert"])).run()
        self.assertEqual([certificate.determinism_hash for certificate in first.certificates],
                         [certificate.determinism_hash for certificate in second.certificates])

    def test_low_needs_scans(self):
        with self.assertRaises(ConfigurationError):
            Pipeline(self._config(["low-cert"])).run()

    def test_low_from_earlier_scans(self):
        _scan_certificate("scan-low-i", 16, 16).write(self.directory)
        _scan_certificate("scan-low-ii", 6, 6).write(self.directory)
        outcome = Pipeline(self._config(["low-cert"])).run()
        self.assertTrue(outcome.verified)
        self.assertFalse(outcome.certificate("low-upper").partial)

    def test_low_from_partial_scan(self):
        truncated = _scan_certificate("scan-low-i", 16, 16)
        truncated.mark_partial("low-range scan truncated")
        truncated.write(self.directory)
        _scan_certificate("scan-low-ii", 6, 6).write(self.directory)
        outcome = Pipeline(self._config(["low-cert"])).run()
        self.assertTrue(outcome.certificate("low-upper").partial)
        self.assertTrue(any("low-range scan truncated" in note for note in outcome.certificate("summary").notes))

    def test_low_with_large_cap(self):
        _scan_certificate("scan-low-i", 17, 17).write(self.directory)
        _scan_certificate("scan-low-ii", 6, 6).write(self.directory)
        outcome = Pipeline(self._config(["low-cert"])).run()
        self.assertEqual("low-cert", outcome.failed_stage)
        self.assertEqual(1, outcome.exit_code)
        self.assertIsNone(outcome.certificate("summary"))

    def test_stops_at_failing_stage(self):
        failing = Certificate("high", {}, [], Enclosure.point(1), Fraction(1))
        with patch("cli.pipeline.certify_high_range", return_value=failing):
            outcome = Pipeline(self._config(["constants", "high-cert", "mid-cert"])).run()
        self.assertEqual("high-cert", outcome.failed_stage)
        self.assertEqual(["robin", "constants", "high"], [certificate.stage for certificate in outcome.certificates])

    def test_unexpected_error(self):
        with patch("cli.pipeline.certify_high_range", side_effect=RuntimeError("boom")):
            with self.assertLogs("singular.cli.pipeline", level="ERROR"):
                outcome = Pipeline(self._config(["high-cert", "mid-cert"])).run()
        self.assertEqual("high-cert", outcome.failed_stage)
        self.assertEqual([], outcome.certificates)
        self.assertEqual(1, outcome.exit_code)

    def test_desk_scale_exclusion(self):
        outcome = Pipeline(self._config(["exclude"], desk_scale=True)).run()
        certificate = outcome.certificate("exclude")
        self.assertTrue(certificate.verified)
        self.assertTrue(certificate.partial)

    @skipUnless(LONG_TESTS, "desk scale pipeline")
    def test_desk_scale_pipeline(self):
        config = PipelineConfig(list(STAGES), os.cpu_count() or 1, 1 << 24, self.directory, desk_scale=True)
        first = Pipeline(config).run()
        self.assertTrue(first.verified)
        summary = first.certificate("summary")
        self.assertTrue(any("low-range scan truncated" in note for note in summary.notes))
        shutil.rmtree(self.directory)
        second = Pipeline(config).run()
        self.assertEqual([certificate.determinism_hash for certificate in first.certificates],
                         [certificate.determinism_hash for certificate in second.certificates])
