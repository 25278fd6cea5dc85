from __future__ import absolute_import, annotations

import csv
import json
import os
import tempfile
from unittest import TestCase, skipUnless

from common.errors import CheckpointError, ConfigurationError
from scanner.config import ScanConfig
from scanner.scan import BlockSummary, ScanReport, certify_scan, dump_counters, merge_reports, plan_blocks, \
    read_checkpoint, scan_range


LONG_TESTS = os.getenv("SINGULAR_LONG_TESTS") == "1"


def _config(block_size: int, threads: int = 1) -> ScanConfig:
    return ScanConfig.build(3 * 10 ** 5, 10 ** 6, "4e-3", block_size=block_size, threads=threads)


class TestScanRange(TestCase):

    def test_plan(self):
        blocks = plan_blocks(_config(300000))
        self.assertEqual([(300000, 599999), (600000, 899999), (900000, 1000000)], blocks)

    def test_independent_of_block_size_and_threads(self):
        reports = [scan_range(_config(10 ** 6)), scan_range(_config(123457)), scan_range(_config(50000, threads=2))]
        bounds = {report.global_bound for report in reports}
        self.assertEqual(1, len(bounds))
        for report in reports:
            self.assertTrue(report.complete)
            self.assertFalse(report.saturated)

    def test_lower_range_bound(self):
        config = ScanConfig.build(3 * 10 ** 5, 10 ** 7, "4e-3", threads=1)
        report = scan_range(config)
        self.assertTrue(report.global_bound <= 6)
        report.ensure_unsaturated()

    def test_upper_range_start(self):
        config = ScanConfig.build(10 ** 7, 10 ** 8, "1e-3", threads=1)
        self.assertTrue(scan_range(config).global_bound <= 16)

    @skipUnless(LONG_TESTS, "full range scan")
    def test_upper_range_bound(self):
        config = ScanConfig.build(10 ** 7, 10 ** 10, "1e-3")
        self.assertTrue(scan_range(config).global_bound <= 16)

    def test_checkpoint_resume(self):
        config = _config(200000)
        with tempfile.TemporaryDirectory() as directory:
            file_path = os.path.join(directory, "scan.json")
            first = scan_range(config, file_path)
            self.assertEqual(first, read_checkpoint(file_path, config))
            resumed = scan_range(config, file_path)
        self.assertEqual(first.global_bound, resumed.global_bound)
        self.assertEqual(first.blocks, resumed.blocks)

    def test_checkpoint_of_another_scan(self):
        with tempfile.TemporaryDirectory() as directory:
            file_path = os.path.join(directory, "scan.json")
            scan_range(_config(200000), file_path)
            with self.assertRaises(CheckpointError):
                read_checkpoint(file_path, _config(100000))

    def test_broken_checkpoint(self):
        with tempfile.TemporaryDirectory() as directory:
            file_path = os.path.join(directory, "scan.json")
            with open(file_path, "w") as f:
                json.dump({"config": {}}, f)
            with self.assertRaises(CheckpointError):
                scan_range(_config(200000), file_path)

    def test_dump(self):
        config = _config(10 ** 6)
        with tempfile.TemporaryDirectory() as directory:
            file_path = os.path.join(directory, "counters.csv")
            rows = dump_counters(config, 300000, 300099, file_path)
            with open(file_path) as f:
                content = list(csv.reader(f))
        self.assertEqual(100, rows)
        self.assertEqual(["X", "counter"], content[0])
        self.assertEqual("300000", content[1][0])
        self.assertEqual(101, len(content))


class TestMergeReports(TestCase):

    def setUp(self):
        self.config = _config(350000)

    def test_max(self):
        first = ScanReport(self.config, [BlockSummary(300000, 649999, 4, False)])
        second = ScanReport(self.config, [BlockSummary(650000, 999999, 6, False)])
        self.assertEqual(6, merge_reports([first, second]).global_bound)
        self.assertEqual(merge_reports([first, second]), merge_reports([second, first]))

    def test_single(self):
        report = ScanReport(self.config, [BlockSummary(300000, 649999, 4, False)])
        self.assertEqual(report, merge_reports([report]))

    def test_overlap(self):
        first = ScanReport(self.config, [BlockSummary(300000, 649999, 4, False)])
        second = ScanReport(self.config, [BlockSummary(600000, 999999, 6, False)])
        with self.assertRaises(ConfigurationError):
            merge_reports([first, second])

    def test_mismatched_config(self):
        other = ScanConfig.build(3 * 10 ** 5, 10 ** 6, "1e-3", block_size=350000, threads=1)
        first = ScanReport(self.config, [BlockSummary(300000, 649999, 4, False)])
        second = ScanReport(other, [BlockSummary(650000, 999999, 6, False)])
        with self.assertRaises(ConfigurationError):
            merge_reports([first, second])

    def test_repr(self):
        report = ScanReport(self.config, [BlockSummary(300000, 649999, 4, True)])
        self.assertEqual(report, ScanReport.from_repr(report.to_repr()))
        self.assertTrue(report.saturated)
        self.assertFalse(report.complete)


class TestCertifyScan(TestCase):

    def _report(self, blocks) -> ScanReport:
        return ScanReport(ScanConfig.build(100, 299, "4e-3", block_size=100, threads=1), blocks)

    def test_verified(self):
        report = self._report([BlockSummary(100, 199, 2, False), BlockSummary(200, 299, 6, False)])
        certificate = certify_scan(report, "scan-low-ii", 6)
        self.assertTrue(certificate.verified)
        self.assertEqual(6, certificate.total.hi)
        self.assertEqual(2, len(certificate.terms))

    def test_bound_above_cap(self):
        report = self._report([BlockSummary(100, 199, 7, False), BlockSummary(200, 299, 6, False)])
        self.assertFalse(certify_scan(report, "scan-low-ii", 6).verified)

    def test_incomplete(self):
        certificate = certify_scan(self._report([BlockSummary(100, 199, 2, False)]), "scan-low-ii", 6)
        self.assertFalse(certificate.verified)
        self.assertEqual(["blocks cover [100, 299]"], certificate.failed_checks())

    def test_saturated(self):
        report = self._report([BlockSummary(100, 199, 2, True), BlockSummary(200, 299, 3, False)])
        self.assertEqual(["saturated blocks"], certify_scan(report, "scan-low-ii", 6).failed_checks())
