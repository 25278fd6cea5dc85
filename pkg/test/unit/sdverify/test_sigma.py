from __future__ import absolute_import, annotations

import os
from fractions import Fraction
from unittest import TestCase, skipUnless

from arithfun.factor import sigma0, sigma1
from common.errors import DomainError
from sdverify.sigma import SigmaExtremes, certify_sigma_extremes, compute_sigma_extremes, verify_sigma_extremes


LONG_TESTS = os.getenv("SINGULAR_LONG_TESTS") == "1"


class TestSigmaExtremes(TestCase):

    def test_record_value(self):
        self.assertEqual(Fraction(3472, 715), Fraction(sigma1(21621600), 21621600))

    def test_against_brute_force(self):
        extremes = compute_sigma_extremes(5000, threads=1)
        ratios = [Fraction(sigma1(n), n) for n in range(1, 5001)]
        best = max(ratios)
        self.assertEqual(best, extremes.sigma1_ratio)
        self.assertEqual(ratios.index(best) + 1, extremes.sigma1_argmax)
        fourth = [Fraction((2 * sigma0(n)) ** 4, 17 ** 4 * n) for n in range(1, 5001)]
        self.assertEqual(max(fourth), extremes.sigma0_ratio)

    def test_desk_range(self):
        extremes = compute_sigma_extremes(10 ** 6)
        self.assertTrue(extremes.sigma1_ratio < Fraction(3472, 715))
        self.assertEqual(Fraction(sigma1(extremes.sigma1_argmax), extremes.sigma1_argmax), extremes.sigma1_ratio)
        self.assertTrue(extremes.sigma0_ratio <= 1)
        self.assertTrue(extremes.holds())

    def test_one(self):
        extremes = compute_sigma_extremes(1)
        self.assertEqual(1, extremes.sigma1_ratio)
        self.assertEqual(Fraction(16, 17 ** 4), extremes.sigma0_ratio)

    def test_repr(self):
        extremes = compute_sigma_extremes(100)
        self.assertEqual(extremes, SigmaExtremes.from_repr(extremes.to_repr()))

    def test_invalid_limit(self):
        with self.assertRaises(DomainError):
            compute_sigma_extremes(0)

    def test_certificate(self):
        certificate = certify_sigma_extremes(10 ** 5)
        self.assertEqual("sigma-extremes", certificate.stage)
        self.assertTrue(certificate.verified, certificate.failed_checks())

    @skipUnless(LONG_TESTS, "full range pass")
    def test_full_range(self):
        self.assertTrue(verify_sigma_extremes())
