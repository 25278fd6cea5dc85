from __future__ import absolute_import, annotations

from fractions import Fraction
from unittest import TestCase

import mpmath

from common.errors import DomainError
from interval.constants import const
from interval.functions import sqrt_enclosure
from quadforms.corners import corner_distance_below, count_ceps_exact
from quadforms.forms import class_number, enumerate_reduced_forms, tau_of_form


def _numeric_count(delta: int, eps: Fraction) -> int:
    count = 0
    with mpmath.workdps(40):
        for form in enumerate_reduced_forms(delta):
            tau = tau_of_form(form, delta, 30).to_mpc()
            distance = min(abs(tau - mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)),
                           abs(tau - mpmath.mpc(0.5, mpmath.sqrt(3) / 2)))
            if distance < mpmath.mpf(eps.numerator) / eps.denominator:
                count += 1
    return count


class TestCountCeps(TestCase):

    def test_corner_discriminant(self):
        for eps in [Fraction(1, 3), Fraction(1, 1000), Fraction(1, 10 ** 12)]:
            self.assertEqual(1, count_ceps_exact(-3, eps))

    def test_against_numeric_distances(self):
        for x in list(range(4, 400)) + list(range(20000, 20100)):
            if x % 4 not in (0, 3):
                continue
            for eps in [Fraction(1, 3), Fraction(1, 10), Fraction(1, 100)]:
                self.assertEqual(_numeric_count(-x, eps), count_ceps_exact(-x, eps), f"delta = {-x}, eps = {eps}")

    def test_subset_of_class_group(self):
        for x in range(3, 1000, 5):
            if x % 4 in (0, 3):
                self.assertLessEqual(count_ceps_exact(-x, Fraction(1, 3)), class_number(-x))

    def test_radius_range(self):
        with self.assertRaises(DomainError):
            count_ceps_exact(-23, Fraction(2, 5))
        with self.assertRaises(DomainError):
            count_ceps_exact(-23, Fraction(0))

    def test_forms_near_corners_satisfy_windows(self):
        sqrt3 = const("sqrt3")
        for eps in [Fraction(1, 10), Fraction(1, 100)]:
            for x in range(1000, 100001, 997):
                if x % 4 not in (0, 3):
                    continue
                root = sqrt_enclosure(x)
                for form in enumerate_reduced_forms(-x):
                    if not corner_distance_below(form, -x, eps * eps):
                        continue
                    a, b, c = form
                    self.assertLessEqual(3 * a * a, x)
                    self.assertGreater(a, (root / (sqrt3 + 2 * eps)).lo)
                    self.assertTrue(a * (1 - 2 * eps) < abs(b) <= a)
                    self.assertLessEqual(a, c)
                    self.assertLess(c, (a * (1 + sqrt3 * eps + eps * eps)).hi)

    def test_separation_from_corners(self):
        for x in range(4, 3000):
            if x % 4 not in (0, 3):
                continue
            for form in enumerate_reduced_forms(-x):
                self.assertFalse(corner_distance_below(form, -x, Fraction(3, 16 * x * x)), f"delta = {-x}")
