from __future__ import absolute_import, annotations

from fractions import Fraction
from unittest import TestCase

from rangecert.mid import certify_mid_range


class TestMidRange(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.upper, cls.lower = certify_mid_range()

    def test_stages(self):
        self.assertEqual("mid-upper", self.upper.stage)
        self.assertEqual("mid-lower", self.lower.stage)

    def test_upper_interval(self):
        self.assertTrue(self.upper.verified)
        self.assertTrue(self.upper.total.hi < Fraction("0.962"))
        self.assertTrue(abs(float(self.upper.total.hi) - 0.9615) < 5e-4)

    def test_lower_interval(self):
        self.assertTrue(self.lower.verified)
        self.assertTrue(self.lower.total.hi < Fraction("0.960"))
        self.assertTrue(abs(float(self.lower.total.hi) - 0.9591) < 5e-4)

    def test_five_terms(self):
        self.assertEqual(5, len(self.upper.terms))
        self.assertEqual(Fraction(1, 10 ** 4), self.upper.inputs["eps"])

    def test_larger_eps_fails(self):
        upper, _ = certify_mid_range(Fraction(1, 10 ** 3))
        self.assertFalse(upper.verified)
