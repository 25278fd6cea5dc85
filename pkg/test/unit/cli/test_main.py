from __future__ import absolute_import, annotations

import io
import json
import os
import shutil
import tempfile
from contextlib import redirect_stdout
from typing import Dict, List, Tuple
from unittest import TestCase, skipUnless

from cli.main import EXIT_CONFIGURATION, EXIT_VERIFIED, build_parser, main


LONG_TESTS = os.getenv("SINGULAR_LONG_TESTS") == "1"


def _run(argv: List[str]) -> Tuple[int, str]:
    output = io.StringIO()
    with redirect_stdout(output):
        status = main(argv)
    return status, output.getvalue()


def _stored_certificates(directory: str) -> Dict[str, dict]:
    stored = {}
    for name in sorted(os.listdir(directory)):
        if name.endswith(".cert.json"):
            with open(os.path.join(directory, name)) as f:
                raw = json.load(f)
            raw.pop("runtime_ms")
            stored[name] = raw
    return stored


class TestParser(TestCase):

    def test_scan_arguments(self):
        arguments = build_parser().parse_args(["scan", "--x-min", "3e5", "--x-max", "1e7", "--eps", "4e-3",
                                               "--threads", "4", "--checkpoint", "scan.ckpt.json"])
        self.assertEqual(300000, arguments.x_min)
        self.assertEqual(10 ** 7, arguments.x_max)
        self.assertEqual("4e-3", arguments.eps)
        self.assertEqual(4, arguments.threads)

    def test_unknown_preset(self):
        with self.assertRaises(SystemExit):
            build_parser().parse_args(["scan", "--x-min", "1", "--x-max", "2", "--eps", "1e-2"])

    def test_certify_stages(self):
        arguments = build_parser().parse_args(["certify", "high-cert", "mid-cert", "--desk-scale"])
        self.assertEqual(["high-cert", "mid-cert"], arguments.stages)
        self.assertTrue(arguments.desk_scale)


class TestMain(TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_forms(self):
        status, output = _run(["forms", "-23"])
        self.assertEqual(EXIT_VERIFIED, status)
        self.assertEqual([[1, 1, 6], [2, -1, 3], [2, 1, 3]], json.loads(output))

    def test_class_number(self):
        status, output = _run(["class-number", "-163"])
        self.assertEqual(EXIT_VERIFIED, status)
        self.assertEqual(1, json.loads(output)["classNumber"])

    def test_invalid_discriminant(self):
        status, _ = _run(["class-number", "-5"])
        self.assertEqual(EXIT_CONFIGURATION, status)

    def test_j(self):
        status, output = _run(["j", "-4", "--precision", "20"])
        self.assertEqual(EXIT_VERIFIED, status)
        raw = json.loads(output)
        self.assertEqual("oracle, non-certified", raw["label"])
        self.assertAlmostEqual(1728, float(raw["values"][0]["re"]))

    def test_exclude(self):
        status, output = _run(["exclude", "--x-max", "1000", "--json"])
        self.assertEqual(EXIT_VERIFIED, status)
        self.assertEqual([-4, -7, -8], [bound["delta"] for bound in json.loads(output)["flagged"]])

    def test_exclude_invalid(self):
        status, _ = _run(["exclude", "--x-max", "3"])
        self.assertEqual(EXIT_CONFIGURATION, status)

    def test_scan(self):
        checkpoint = os.path.join(self.directory, "scan.ckpt.json")
        status, output = _run(["scan", "--x-min", "300000", "--x-max", "400000", "--eps", "4e-3", "--threads", "1",
                               "--block-size", "50000", "--checkpoint", checkpoint, "--json"])
        self.assertEqual(EXIT_VERIFIED, status)
        report = json.loads(output)
        self.assertLessEqual(report["globalBound"], 6)
        self.assertEqual(3, report["blocksProcessed"])
        self.assertTrue(os.path.exists(checkpoint))

    def test_scan_invalid_range(self):
        status, _ = _run(["scan", "--x-min", "100", "--x-max", "50", "--eps", "1e-3"])
        self.assertEqual(EXIT_CONFIGURATION, status)

    def test_certify(self):
        status, output = _run(["certify", "high-cert", "--output-dir", self.directory])
        self.assertEqual(EXIT_VERIFIED, status)
        self.assertIn("high: verified", output)
        self.assertTrue(os.path.exists(os.path.join(self.directory, "high.cert.json")))
        self.assertTrue(os.path.exists(os.path.join(self.directory, "summary.cert.json")))

    def test_certify_low_without_scans(self):
        status, _ = _run(["certify", "low-cert", "--output-dir", self.directory])
        self.assertEqual(EXIT_CONFIGURATION, status)

    def test_verify_constants(self):
        status, output = _run(["verify-constants", "--output-dir", self.directory])
        self.assertEqual(EXIT_VERIFIED, status)
        self.assertIn("robin: verified", output)

    def test_certify_twice_is_identical(self):
        first, second = os.path.join(self.directory, "first"), os.path.join(self.directory, "second")
        for directory in (first, second):
            status, _ = _run(["certify", "constants", "high-cert", "mid-cert", "--output-dir", directory])
            self.assertEqual(EXIT_VERIFIED, status)
        stored = _stored_certificates(first)
        self.assertEqual(["constants.cert.json", "high.cert.json", "mid-lower.cert.json", "mid-upper.cert.json",
                          "robin.cert.json", "summary.cert.json"], sorted(stored))
        self.assertEqual(stored, _stored_certificates(second))

    @skipUnless(LONG_TESTS, "desk scale prove-all")
    def test_prove_all_desk_scale(self):
        first, second = os.path.join(self.directory, "first"), os.path.join(self.directory, "second")
        for directory in (first, second):
            status, output = _run(["prove-all", "--desk-scale", "--output-dir", directory])
            self.assertEqual(EXIT_VERIFIED, status, output)
        stored = _stored_certificates(first)
        self.assertTrue(stored["summary.cert.json"]["verified"])
        self.assertEqual(stored, _stored_certificates(second))
        self.assertEqual([raw["determinism_hash"] for raw in stored.values()],
                         [raw["determinism_hash"] for raw in _stored_certificates(second).values()])
