from __future__ import absolute_import, annotations

import math
import random
from unittest import TestCase

import mpmath

from heightbounds.heights import height_lower_easy, height_lower_hard
from jnum.jfunction import ComplexApprox
from jnum.moduli import height_numeric, singular_moduli, symmetric_functions
from quadforms.forms import class_number


class TestSingularModuli(TestCase):

    def test_rational_moduli(self):
        for delta, expected in [(-4, 1728), (-7, -3375), (-8, 8000)]:
            values = singular_moduli(delta)
            self.assertEqual(1, len(values))
            self.assertEqual(expected, values[0].nearest_integer())
            self.assertLess(abs(values[0].value - expected), mpmath.mpf(10) ** -20)

    def test_conjugates_of_minus_15(self):
        values = singular_moduli(-15)
        self.assertEqual(2, len(values))
        trace, norm = symmetric_functions(values)
        self.assertTrue(trace.is_integral())
        self.assertTrue(norm.is_integral())
        # j = (-191025 +/- 85995 sqrt 5) / 2
        self.assertEqual(-191025, trace.nearest_integer())
        self.assertEqual(-121287375, norm.nearest_integer())

    def test_symmetric_functions_integral(self):
        for x in range(15, 400):
            if x % 4 not in (0, 3):
                continue
            for value in symmetric_functions(singular_moduli(-x, 40)):
                self.assertTrue(value.is_integral(mpmath.mpf(10) ** -5), f"delta = {-x}")

    def test_symmetric_functions_of_integers(self):
        values = [mpmath.mpc(2), mpmath.mpc(3), mpmath.mpc(5)]
        e1, e2, e3 = symmetric_functions([ComplexApprox(value) for value in values])
        self.assertEqual(10, e1.nearest_integer())
        self.assertEqual(31, e2.nearest_integer())
        self.assertEqual(30, e3.nearest_integer())


class TestHeightNumeric(TestCase):

    def test_examples(self):
        self.assertAlmostEqual(math.log(1728), float(height_numeric(-4)), places=12)
        self.assertEqual(0, height_numeric(-3))
        self.assertGreaterEqual(float(height_numeric(-16)), 4 * math.pi - 0.01)

    def test_respects_lower_bounds(self):
        generator = random.Random(83)
        samples = [x for x in generator.sample(range(16, 10001), 120) if x % 4 in (0, 3)]
        for x in samples + [16, 19, 20, 9995, 9999]:
            height = height_numeric(-x, 15)
            easy = height_lower_easy(-x, class_number(-x))
            hard = height_lower_hard(-x)
            self.assertGreaterEqual(float(height), float(easy.lo), f"delta = {-x}")
            self.assertGreaterEqual(float(height), float(hard.lo), f"delta = {-x}")
