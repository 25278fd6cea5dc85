from __future__ import absolute_import, annotations

import csv
import os
import shutil
import tempfile
from fractions import Fraction
from unittest import TestCase, skipUnless

import mpmath

from common.errors import DomainError
from excluder.norms import (
    KNOWN_NON_UNITS, ExclusionReport, FormGrid, NormBound, exclude_range, form_term_lower, inline_forms,
    norm_lower_bound
)
from jnum.moduli import singular_moduli
from quadforms.forms import QuadForm, enumerate_reduced_forms


LONG_TESTS = os.getenv("SINGULAR_LONG_TESTS") == "1"


class TestFormTerm(TestCase):

    def test_corner_branch(self):
        self.assertEqual(Fraction(42700, 15625000), form_term_lower(-4, QuadForm(1, 0, 1)))

    def test_growth_branch(self):
        self.assertEqual(10088, form_term_lower(-11, QuadForm(1, 1, 3)))
        # a = 2 for delta = -23 gives n = 2
        self.assertEqual(42700 * Fraction(1, 250) ** 3, form_term_lower(-23, QuadForm(2, 1, 3)))

    def test_large_discriminant(self):
        term = form_term_lower(-300007, QuadForm(1, 1, 75002))
        self.assertEqual(23 ** 547 - 2079, term)

    def test_small_corner_radius(self):
        # 2 / (5 X) < 1 / 250 once X > 100
        term = form_term_lower(-1003, QuadForm(11, 3, 23))
        self.assertEqual(42700 * Fraction(2, 5 * 1003) ** 3, term)

    def test_positive(self):
        for x in range(4, 3000):
            if x % 4 not in (0, 3):
                continue
            for form in enumerate_reduced_forms(-x):
                self.assertGreater(form_term_lower(-x, form), 0)

    def test_too_small(self):
        with self.assertRaises(DomainError):
            form_term_lower(-3, QuadForm(1, 1, 1))


class TestInlineForms(TestCase):

    def test_matches_enumeration(self):
        for x in range(4, 1001):
            if x % 4 not in (0, 3):
                continue
            self.assertEqual(set(enumerate_reduced_forms(-x)), set(inline_forms(-x)), f"delta = {-x}")
            self.assertEqual(len(enumerate_reduced_forms(-x)), len(inline_forms(-x)))


class TestFormGrid(TestCase):

    def test_matches_inline_forms(self):
        grid = FormGrid(3000)
        for x in range(4, 3001):
            if x % 4 not in (0, 3):
                continue
            self.assertEqual(inline_forms(-x), grid.forms(-x), f"delta = {-x}")

    def test_same_bound(self):
        grid = FormGrid(20000)
        for delta in [-4, -23, -40, -1003, -9999, -19999]:
            self.assertEqual(norm_lower_bound(delta), norm_lower_bound(delta, grid.forms(delta)))

    def test_outside_grid(self):
        grid = FormGrid(100)
        with self.assertRaises(DomainError):
            grid.forms(-101)
        with self.assertRaises(DomainError):
            grid.forms(-3)
        with self.assertRaises(DomainError):
            FormGrid(3)


class TestNormLowerBound(TestCase):

    def test_flagged(self):
        bound = norm_lower_bound(-4)
        self.assertTrue(bound.flagged)
        self.assertEqual(Fraction(42700, 15625000), bound.p_lower)
        self.assertFalse(bound.early_exit)

    def test_not_flagged(self):
        bound = norm_lower_bound(-11)
        self.assertFalse(bound.flagged)
        self.assertEqual(10088, bound.p_lower)

    def test_early_exit(self):
        # (2, 0, 5) already lifts the product above 1, (1, 0, 10) is skipped
        bound = norm_lower_bound(-40)
        self.assertEqual(10088, bound.p_lower)
        self.assertTrue(bound.early_exit)

    def test_full_product_without_exit(self):
        bound = norm_lower_bound(-23)
        expected = (23 ** 4 - 2079) * (42700 * Fraction(1, 250) ** 3) ** 2
        self.assertEqual(expected, bound.p_lower)
        self.assertFalse(bound.flagged)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            norm_lower_bound(-3)
        with self.assertRaises(DomainError):
            norm_lower_bound(-5)
        with self.assertRaises(DomainError):
            norm_lower_bound(4)

    def test_repr(self):
        raw = norm_lower_bound(-4).to_repr()
        self.assertEqual(-4, raw["delta"])
        self.assertEqual("427/156250", raw["pLower"])
        self.assertTrue(raw["flagged"])
        self.assertEqual(NormBound(-4, Fraction(42700, 15625000)), norm_lower_bound(-4))

    def test_below_numeric_norm(self):
        for x in list(range(4, 400)) + list(range(9000, 9040)):
            if x % 4 not in (0, 3):
                continue
            bound = norm_lower_bound(-x)
            with mpmath.workdps(40):
                norm = mpmath.mpf(1)
                for value in singular_moduli(-x, 20):
                    norm *= abs(value)
                if bound.early_exit:
                    # the bound stops once above 1, the norm is larger still
                    self.assertGreater(norm, 1, f"delta = {-x}")
                else:
                    lower = mpmath.mpf(bound.p_lower.numerator) / bound.p_lower.denominator
                    self.assertLessEqual(lower, norm * (1 + mpmath.mpf(10) ** -3), f"delta = {-x}")


class TestExcludeRange(TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_single_discriminant(self):
        report = exclude_range(4)
        self.assertEqual([-4], report.flagged_deltas)
        self.assertEqual(1, report.scanned_count)

    def test_known_flags(self):
        for x_max in [8, 1000, 10000]:
            report = exclude_range(x_max)
            self.assertEqual([-4, -7, -8], report.flagged_deltas)
            self.assertTrue(report.only_known_non_units())

    def test_desk_range_runtime(self):
        report = exclude_range(10000)
        self.assertEqual([-4, -7, -8], report.flagged_deltas)
        self.assertLess(report.runtime_ms, 10000)

    def test_monotone(self):
        previous = []
        for x_max in [4, 7, 8, 50, 500]:
            flagged = exclude_range(x_max).flagged_deltas
            self.assertTrue(set(previous).issubset(flagged))
            previous = flagged

    def test_partition_independent(self):
        single = exclude_range(5000, chunk_size=20000)
        split = exclude_range(5000, threads=2, chunk_size=700)
        self.assertEqual(single.flagged_deltas, split.flagged_deltas)
        self.assertEqual(single.scanned_count, split.scanned_count)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            exclude_range(3)

    def test_csv(self):
        file_path = os.path.join(self.directory, "exclude.csv")
        report = exclude_range(40, csv_path=file_path)
        with open(file_path) as f:
            rows = list(csv.reader(f))
        self.assertEqual(["delta", "p_lower_numerator", "p_lower_denominator", "flagged"], rows[0])
        self.assertEqual(report.scanned_count + 1, len(rows))
        self.assertEqual(["-4", "427", "156250", "1"], rows[1])
        flagged = [int(row[0]) for row in rows[1:] if row[3] == "1"]
        self.assertEqual(report.flagged_deltas, sorted(flagged, reverse=True))

    def test_report_order(self):
        report = ExclusionReport(10, [NormBound(-8, Fraction(1, 2)), NormBound(-4, Fraction(1, 3))], 4)
        self.assertEqual([-4, -8], report.flagged_deltas)
        self.assertEqual(10, report.to_repr()["xMax"])

    @skipUnless(LONG_TESTS, "full exclusion run")
    def test_full_range(self):
        report = exclude_range(300000, threads=os.cpu_count() or 1)
        self.assertEqual([-4, -7, -8], report.flagged_deltas)
        self.assertEqual(set(KNOWN_NON_UNITS), set(report.flagged_deltas))
