from __future__ import absolute_import, annotations

from fractions import Fraction
from unittest import TestCase

from excluder.certify import certify_exclusion
from excluder.norms import ExclusionReport, NormBound, exclude_range


class TestCertifyExclusion(TestCase):

    def test_known_flags(self):
        certificate = certify_exclusion(exclude_range(1000))
        self.assertEqual("exclude", certificate.stage)
        self.assertTrue(certificate.verified)
        self.assertEqual(0, certificate.total.hi)
        self.assertEqual(6, len(certificate.checks))
        self.assertEqual(["p_lower(-4)", "p_lower(-7)", "p_lower(-8)"], [label for label, _ in certificate.terms])

    def test_unknown_flag(self):
        report = ExclusionReport(20, [NormBound(-4, Fraction(1, 366)), NormBound(-15, Fraction(1, 2))], 9)
        certificate = certify_exclusion(report)
        self.assertFalse(certificate.verified)
        self.assertEqual(1, certificate.total.lo)

    def test_flag_outside_table(self):
        # -11 has j = -32^3, so a flag on it would not be covered by the table
        report = ExclusionReport(11, [NormBound(-11, Fraction(1, 2))], 4)
        self.assertFalse(certify_exclusion(report).verified)

    def test_deterministic(self):
        report = exclude_range(100)
        self.assertEqual(certify_exclusion(report).determinism_hash, certify_exclusion(report).determinism_hash)
