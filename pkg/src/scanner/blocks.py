from __future__ import absolute_import, annotations

import logging
from typing import Callable, List, Tuple

import numpy as np

from common.errors import DomainError
from scanner.config import ScanConfig


logger = logging.getLogger("singular.scanner.blocks")

COUNTER_CEILING = 255
FLUSH_SIZE = 1 << 22


def _first_true(predicate: Callable[[int], bool], lo: int, hi: int) -> int:
    """The smallest c in [lo, hi] with predicate(c), for a predicate that is monotone and true at hi."""
    while lo < hi:
        middle = (lo + hi) // 2
        if predicate(middle):
            hi = middle
        else:
            lo = middle + 1
    return lo


def _a_start(c: int, config: ScanConfig) -> int:
    factor = config.a_lower_factor
    return max(1, c * factor.numerator // factor.denominator)


def _largest_x(c: int, config: ScanConfig) -> int:
    """4 c^2 - floor(b_factor floor(a_factor c))^2, at least every X = 4ac - b^2 visited for this c."""
    factor = config.b_lower_factor
    b_min = _a_start(c, config) * factor.numerator // factor.denominator
    return 4 * c * c - b_min * b_min


def _smallest_x(c: int, config: ScanConfig) -> int:
    """a0 (4c - a0) with a0 the first a of the loop, at most every X = 4ac - b^2 visited for this c."""
    a0 = _a_start(c, config)
    return a0 * (4 * c - a0)


def block_c_window(x_lo: int, x_hi: int, config: ScanConfig) -> Tuple[int, int]:
    """
    The range of c whose triples can land in [x_lo, x_hi]. Both bounds of X visited for a given c increase with
    c, so the window is found by bisection on integers; the window is empty when c_min > c_max.

    :return: (c_min, c_max)
    """
    if x_lo < 1 or x_hi < x_lo:
        raise DomainError(f"Invalid block [{x_lo}, {x_hi}]")
    top = 2
    while _smallest_x(top, config) <= x_hi:
        top *= 2
    c_max = _first_true(lambda c: _smallest_x(c, config) > x_hi, 1, top) - 1
    top = 2
    while _largest_x(top, config) < x_lo:
        top *= 2
    c_min = _first_true(lambda c: _largest_x(c, config) >= x_lo, 1, top)
    return c_min, c_max


class CountBlock:
    """
    Saturating counters for the X = |delta| of one block.

    Attributes:
        - x_lo, x_hi: the block, both ends included
        - counters: numpy uint8 array indexed by X - x_lo, two per triple (a, b, c) with b >= 0 and 4ac - b^2 = X
        - saturated: whether some counter reached the ceiling
    """

    def __init__(self, x_lo: int, x_hi: int) -> None:
        self.x_lo = x_lo
        self.x_hi = x_hi
        self.counters = np.zeros(x_hi - x_lo + 1, dtype=np.uint8)
        self.saturated = False

    def add(self, offsets: np.ndarray) -> None:
        if offsets.size == 0:
            return
        positions, hits = np.unique(offsets, return_counts=True)
        updated = self.counters[positions].astype(np.int64) + 2 * hits
        if (updated >= COUNTER_CEILING).any():
            self.saturated = True
        self.counters[positions] = np.minimum(updated, COUNTER_CEILING)

    @property
    def max(self) -> int:
        return int(self.counters.max())

    def counter(self, x: int) -> int:
        if not self.x_lo <= x <= self.x_hi:
            raise DomainError(f"Value [{x}] is outside of the block [{self.x_lo}, {self.x_hi}]")
        return int(self.counters[x - self.x_lo])


def _triples_x(c: int, config: ScanConfig) -> np.ndarray:
    """X = 4ac - b^2 over floor(a_factor c) <= a <= c and floor(b_factor a) <= b <= a, in integers."""
    factor = config.b_lower_factor
    a = np.arange(_a_start(c, config), c + 1, dtype=np.int64)
    b_start = a * factor.numerator // factor.denominator
    lengths = a - b_start + 1
    firsts = np.cumsum(lengths) - lengths
    steps = np.arange(int(lengths.sum()), dtype=np.int64) - np.repeat(firsts, lengths)
    b = np.repeat(b_start, lengths) + steps
    return 4 * c * np.repeat(a, lengths) - b * b


def count_block(x_lo: int, x_hi: int, config: ScanConfig) -> CountBlock:
    """Run the (c, a, b) loops restricted to the c window of the block and count the X falling inside."""
    block = CountBlock(x_lo, x_hi)
    c_min, c_max = block_c_window(x_lo, x_hi, config)
    pending = []  # type: List[np.ndarray]
    pending_size = 0
    for c in range(c_min, c_max + 1):
        x = _triples_x(c, config)
        inside = x[(x >= x_lo) & (x <= x_hi)] - x_lo
        pending.append(inside)
        pending_size += inside.size
        if pending_size >= FLUSH_SIZE:
            block.add(np.concatenate(pending))
            pending = []
            pending_size = 0
    if pending:
        block.add(np.concatenate(pending))
    logger.debug(f"Counted block [{x_lo}, {x_hi}] over c in [{c_min}, {c_max}], max [{block.max}]")
    return block
