from __future__ import absolute_import, annotations

from fractions import Fraction
from unittest import TestCase

from common.errors import DomainError
from quadforms.corners import count_ceps_exact
from scanner.blocks import block_c_window, count_block
from scanner.config import ScanConfig


def _tiny_config() -> ScanConfig:
    return ScanConfig.build(1000, 2000, "custom", Fraction(1, 10), Fraction(845, 1000), Fraction(8, 10), 200, 1)


def _brute_force_cs(x_lo: int, x_hi: int, config: ScanConfig, c_limit: int) -> set:
    found = set()
    for c in range(1, c_limit + 1):
        a_start = max(1, c * config.a_lower_factor.numerator // config.a_lower_factor.denominator)
        for a in range(a_start, c + 1):
            b_start = a * config.b_lower_factor.numerator // config.b_lower_factor.denominator
            for b in range(b_start, a + 1):
                if x_lo <= 4 * a * c - b * b <= x_hi:
                    found.add(c)
    return found


class TestBlockCWindow(TestCase):

    def test_window_contains_every_triple(self):
        config = _tiny_config()
        for x_lo, x_hi in [(1000, 1199), (1500, 1500), (1800, 2000), (10 ** 4, 2 * 10 ** 4)]:
            c_min, c_max = block_c_window(x_lo, x_hi, config)
            for c in _brute_force_cs(x_lo, x_hi, config, 100):
                self.assertTrue(c_min <= c <= c_max, (x_lo, x_hi, c))

    def test_preset_window(self):
        config = ScanConfig.build(10 ** 6, 2 * 10 ** 6, "1e-3", block_size=10 ** 6, threads=1)
        c_min, c_max = block_c_window(10 ** 6, 2 * 10 ** 6, config)
        self.assertTrue(500 <= c_min <= 578)
        self.assertTrue(c_max >= 816)
        for c in _brute_force_cs(10 ** 6, 2 * 10 ** 6, config, 900):
            self.assertTrue(c_min <= c <= c_max)

    def test_degenerate_block(self):
        config = _tiny_config()
        c_min, c_max = block_c_window(1500, 1500, config)
        self.assertTrue(c_min >= 1)
        self.assertTrue(c_min <= c_max + 1)

    def test_invalid_block(self):
        with self.assertRaises(DomainError):
            block_c_window(10, 5, _tiny_config())


class TestCountBlock(TestCase):

    def test_counters_dominate_exact_counts(self):
        config = _tiny_config()
        block = count_block(1000, 2000, config)
        for x in range(1000, 2001):
            if x % 4 in (0, 3):
                self.assertTrue(block.counter(x) >= count_ceps_exact(-x, Fraction(1, 10)), x)

    def test_counters_dominate_exact_counts_preset(self):
        config = ScanConfig.build(3 * 10 ** 5, 10 ** 7, "4e-3", block_size=10 ** 4, threads=1)
        block = count_block(3 * 10 ** 5, 3 * 10 ** 5 + 400, config)
        for x in range(3 * 10 ** 5, 3 * 10 ** 5 + 401):
            if x % 4 in (0, 3):
                self.assertTrue(block.counter(x) >= count_ceps_exact(-x, Fraction(4, 1000)), x)

    def test_only_discriminant_residues(self):
        block = count_block(1000, 2000, _tiny_config())
        for x in range(1000, 2001):
            if x % 4 in (1, 2):
                self.assertEqual(0, block.counter(x))
        self.assertTrue(block.max > 0)
        self.assertEqual(0, block.max % 2)

    def test_counter_out_of_block(self):
        block = count_block(1000, 1100, _tiny_config())
        with self.assertRaises(DomainError):
            block.counter(999)
