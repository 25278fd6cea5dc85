from __future__ import absolute_import, annotations

from fractions import Fraction
from unittest import TestCase

from interval.functions import log_enclosure
from rangecert.high import certify_high_range, power_ceiling, u0, u1, u2, u3


class TestHighRange(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.certificate = certify_high_range()

    def test_verified(self):
        self.assertTrue(self.certificate.verified)
        self.assertEqual([], self.certificate.failed_checks())

    def test_total(self):
        self.assertTrue(self.certificate.total.hi < Fraction("0.981"))
        self.assertTrue(self.certificate.total.lo > Fraction("0.97"))
        self.assertTrue(self.certificate.total.width < Fraction(1, 10 ** 4))

    def test_term_values(self):
        self.assertTrue(abs(float(u0(10 ** 15).hi) + 0.19088) < 1e-4)
        self.assertTrue(abs(float((u1(10 ** 15) * u2(10 ** 15)).hi) - 0.77327) < 1e-4)
        self.assertTrue(abs(float(u3(10 ** 15).hi) - 0.06713) < 1e-4)

    def test_ax_ceiling(self):
        log_ax = u0(10 ** 15) * log_enclosure(10 ** 15)
        ceiling = power_ceiling(log_ax)
        self.assertTrue((log_ax - log_enclosure(ceiling)).hi < 0)
        self.assertLess(abs(float(ceiling) - 10 ** (15 * float(u0(10 ** 15).hi))), 1e-8)
        self.assertLess(ceiling, Fraction("0.0014"))

    def test_runtime(self):
        self.assertLess(self.certificate.runtime_ms, 5000)

    def test_tightened_ax_fails(self):
        tightened = certify_high_range({"ax": Fraction("0.0013")})
        self.assertEqual(["A X^(-1/2) <= B < 0.0014"], tightened.failed_checks())

    def test_constants_recorded(self):
        for value in ("10.66", "10.65", "9.79", "9.78", "3.77", "3.76"):
            self.assertEqual(Fraction(value), self.certificate.inputs[f"constant {value}"])
        self.assertEqual(10 ** 15, self.certificate.inputs["X"])

    def test_monotonicity_note(self):
        self.assertIn("monotonicity: asserted, grid-corroborated", self.certificate.notes)

    def test_deterministic(self):
        self.assertEqual(self.certificate.determinism_hash, certify_high_range().determinism_hash)

    def test_relaxed_bound_stays_verified(self):
        relaxed = certify_high_range({"ax": Fraction("0.002")})
        self.assertTrue(relaxed.verified)

    def test_tightened_bound_fails(self):
        tightened = certify_high_range({"u3": Fraction("0.06")})
        self.assertFalse(tightened.verified)
        self.assertEqual(["u3(10^15) < 0.0672"], tightened.failed_checks())

    def test_tightened_total_fails(self):
        self.assertFalse(certify_high_range({"total": Fraction("0.97")}).verified)
