from __future__ import absolute_import, annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np

from arithfun.sieve import SIEVE_CAP, DivisorData, prefix_sum_2omega, primes_up_to, segmented_divisor_data
from common.errors import DomainError, ResourceCapError
from excluder.isqrt import isqrt
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure, sqrt_enclosure
from rangecert.certificate import Certificate, CertificateCheck


logger = logging.getLogger("singular.sdverify.sums")

SEGMENT_LENGTH = 1 << 20
FULL_RANGE = 2 * 10 ** 7
LOG_FORM_START = 4 * 10 ** 4
# a priori bound on the float64 rounding error of the four screened quotients for n <= 2^31
FLOAT_MARGIN = Fraction(1, 10 ** 7)

UPPER_BOUND = Fraction("0.712")
LOWER_BOUND = Fraction("1.010")
UPPER_LOG_BOUND = Fraction("2.598")
LOWER_LOG_BOUND = Fraction("2.267")
SUM_BOUND = UPPER_BOUND + LOWER_BOUND
SUM_LOG_BOUND = UPPER_LOG_BOUND + LOWER_LOG_BOUND

Real = Union[int, Fraction]


class PrefixBlock:
    """
    S(n) = sum_{k <= n} 2^omega(k) for the n of one sieve segment.

    Attributes:
        - lo: first n of the block
        - sums: numpy int64 array, sums[i] = S(lo + i)
    """

    def __init__(self, lo: int, sums: np.ndarray) -> None:
        self.lo = lo
        self.sums = sums

    @property
    def hi(self) -> int:
        return self.lo + len(self.sums)


def _segments(start: int, n_max: int, length: int) -> List[Tuple[int, int]]:
    return [(lo, min(lo + length, n_max + 1)) for lo in range(start, n_max + 1, length)]


def iter_prefix_blocks(n_max: int, block_length: int = SEGMENT_LENGTH, threads: int = 2) -> Iterator[PrefixBlock]:
    """
    Stream S(n) for 1 <= n <= n_max segment by segment. Segments are sieved ahead by a thread pool, the running
    sum is accumulated in order.

    :raise ResourceCapError: if n_max exceeds the configured sieve cap
    """
    if n_max < 1:
        raise DomainError(f"n_max must be positive, got [{n_max}]")
    if n_max > SIEVE_CAP:
        raise ResourceCapError(f"Streaming up to [{n_max}] exceeds the configured cap [{SIEVE_CAP}]")
    base_primes = primes_up_to(isqrt(n_max) + 1)

    def sieve(segment: Tuple[int, int]) -> DivisorData:
        return segmented_divisor_data(segment[0], segment[1], base_primes, with_sigma=False)

    running = 0
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        # map keeps the submission order, so block k is complete before it is accumulated
        for data in executor.map(sieve, _segments(1, n_max, block_length)):
            weights = np.left_shift(np.int64(1), data.omega.astype(np.int64))
            sums = np.cumsum(weights, dtype=np.int64) + running
            running = int(sums[-1])
            logger.debug(f"Prefix sums streamed up to [{data.hi - 1}], S = [{running}]")
            yield PrefixBlock(data.lo, sums)


def g_enclosure(x: Real) -> Enclosure:
    """g(x) = lambda0 x log x + lambda1 x."""
    return const("lambda0") * x * log_enclosure(x) + const("lambda1") * x


def _quotients(s: int, n: int) -> List[Enclosure]:
    """The four quotients (S - g(n)) / n^(1/2), (g(n+1) - S) / n^(1/2) and their log n weighted versions."""
    root = sqrt_enclosure(n)
    log_n = log_enclosure(n)
    upper = (s - g_enclosure(n)) / root
    lower = (g_enclosure(n + 1) - s) / root
    return [upper, lower, upper * log_n, lower * log_n]


class SdConstants:
    """
    Upper enclosures of the four maxima

        c1 = max (S(n) - g(n)) / n^(1/2)                       for 2 <= n <= n_max
        c2 = max (g(n + 1) - S(n)) / n^(1/2)                   for 2 <= n <= n_max
        c3 = max (S(n) - g(n)) log n / n^(1/2)                 for n_min_34 <= n <= n_max
        c4 = max (g(n + 1) - S(n)) log n / n^(1/2)             for n_min_34 <= n <= n_max

    together with the n at which each maximum is attained (informational, read from the float screening).
    """

    def __init__(self, n_max: int, n_min_34: int, maxima: List[Enclosure], argmax: List[int]) -> None:
        self.n_max = n_max
        self.n_min_34 = n_min_34
        self.c1, self.c2, self.c3, self.c4 = maxima
        self.argmax1, self.argmax2, self.argmax3, self.argmax4 = argmax

    @property
    def maxima(self) -> List[Enclosure]:
        return [self.c1, self.c2, self.c3, self.c4]

    @property
    def argmax(self) -> List[int]:
        return [self.argmax1, self.argmax2, self.argmax3, self.argmax4]

    def bounds_hold(self) -> bool:
        bounds = [UPPER_BOUND, LOWER_BOUND, UPPER_LOG_BOUND, LOWER_LOG_BOUND]
        return all(c.hi <= bound for c, bound in zip(self.maxima, bounds))

    def to_repr(self) -> dict:
        return {
            "nMax": self.n_max,
            "nMin34": self.n_min_34,
            "maxima": [c.to_repr() for c in self.maxima],
            "argmax": self.argmax,
        }

    @staticmethod
    def from_repr(raw: dict) -> SdConstants:
        return SdConstants(
            raw["nMax"],
            raw["nMin34"],
            [Enclosure.from_repr(c) for c in raw["maxima"]],
            raw["argmax"]
        )

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, SdConstants):
            return False
        return o.n_max == self.n_max and o.n_min_34 == self.n_min_34 and o.maxima == self.maxima \
            and o.argmax == self.argmax


class _RunningMax:

    def __init__(self) -> None:
        self.value = -np.inf
        self.n = 0
        self.s = 0

    def update(self, values: np.ndarray, block: PrefixBlock, mask: Optional[np.ndarray] = None) -> None:
        if mask is not None:
            if not mask.any():
                return
            values = np.where(mask, values, -np.inf)
        index = int(np.argmax(values))
        if values[index] > self.value:
            self.value = float(values[index])
            self.n = block.lo + index
            self.s = int(block.sums[index])


def compute_sd_constants(n_max: int = FULL_RANGE, n_min_34: int = LOG_FORM_START, threads: int = 2) -> SdConstants:
    """
    One streaming pass over 2 <= n <= n_max.

    Every quotient is screened in float64; the maximum of each is bounded from above by the screened maximum
    plus FLOAT_MARGIN, and from below by the exact enclosure at the screened argmax.

    :param n_max: the end of the range, at most the sieve cap
    :param n_min_34: the start of the range of the log weighted quotients
    :param threads: the number of sieving threads
    :return: the enclosures of c1, c2, c3, c4
    """
    if n_max < 2 or n_min_34 < 2:
        raise DomainError(f"Ranges must start at 2 at least, got n_max [{n_max}] and n_min_34 [{n_min_34}]")
    started = time.perf_counter()
    lambda0 = float(const("lambda0").midpoint)
    lambda1 = float(const("lambda1").midpoint)
    running = [_RunningMax() for _ in range(4)]
    for block in iter_prefix_blocks(n_max, threads=threads):
        n = np.arange(block.lo, block.hi, dtype=np.float64)
        s = block.sums.astype(np.float64)
        log_n = np.log(n)
        g = lambda0 * n * log_n + lambda1 * n
        g_next = lambda0 * (n + 1) * np.log(n + 1) + lambda1 * (n + 1)
        root = np.sqrt(n)
        upper = (s - g) / root
        lower = (g_next - s) / root
        from_two = n >= 2
        log_range = n >= n_min_34
        running[0].update(upper, block, from_two)
        running[1].update(lower, block, from_two)
        running[2].update(upper * log_n, block, log_range)
        running[3].update(lower * log_n, block, log_range)
    maxima = []
    for index, tracked in enumerate(running):
        if tracked.n == 0:
            raise DomainError(f"Empty range for quotient [{index + 1}], n_min_34 [{n_min_34}] > n_max [{n_max}]")
        exact = _quotients(tracked.s, tracked.n)[index]
        screened = Fraction(tracked.value) + FLOAT_MARGIN
        maxima.append(Enclosure(exact.lo, max(exact.hi, screened)))
    result = SdConstants(n_max, n_min_34, maxima, [tracked.n for tracked in running])
    logger.info(f"Sum constants up to [{n_max}] computed in [{int((time.perf_counter() - started) * 1000)}] ms: "
                f"{[float(c.hi) for c in result.maxima]} at {result.argmax}")
    return result


def verify_sum_sandwich(x_samples: Iterable[Real]) -> bool:
    """
    Decide at every sample x the two inequalities

        g(x) - 1.010 x^(1/2) <= S(x) <= g(x) + 0.712 x^(1/2)                for 2 <= x <= 2 10^7
        g(x) - 2.267 x^(1/2) / log x <= S(x) <= g(x) + 2.598 x^(1/2) / log x  for 4 10^4 <= x <= 2 10^7

    on enclosures, against exact prefix sums.

    :raise DomainError: if a sample lies outside of [2, 2 10^7]
    """
    samples = [Fraction(x) for x in x_samples]
    for x in samples:
        if x < 2 or x > FULL_RANGE:
            raise DomainError(f"Sample [{x}] is outside of [2, {FULL_RANGE}]")
    if not samples:
        return True
    prefix = prefix_sum_2omega(int(max(samples)))
    for x in samples:
        s = prefix.at(x)
        g = g_enclosure(x)
        root = sqrt_enclosure(x)
        holds = (g - LOWER_BOUND * root).hi <= s <= (g + UPPER_BOUND * root).lo
        if holds and x >= LOG_FORM_START:
            log_x = log_enclosure(x)
            holds = (g - LOWER_LOG_BOUND * root / log_x).hi <= s <= (g + UPPER_LOG_BOUND * root / log_x).lo
        if not holds:
            logger.warning(f"Sandwich inequality fails or is undecided at [{x}], S = [{s}]")
            return False
    return True


def interval_sum_bound(a: Real, b: Real, log_form: bool = False) -> Enclosure:
    """
    Upper bound for the sum of 2^omega(n) over a < n <= b:

        lambda0 (b - a)(1 + log b) + lambda1 (b - a) + 1.722 b^(1/2)
        lambda0 (b - a)(1 + log b) + lambda1 (b - a) + 4.865 b^(1/2) / log b    (log_form, a >= 4 10^4)

    :raise DomainError: on range violations
    """
    a = Fraction(a)
    b = Fraction(b)
    if not 0 < a < b <= FULL_RANGE or b < 1:
        raise DomainError(f"Interval sum bound needs 0 < A < B <= {FULL_RANGE}, got [{a}, {b}]")
    if log_form and a < LOG_FORM_START:
        raise DomainError(f"The log form needs A >= {LOG_FORM_START}, got [{a}]")
    log_b = log_enclosure(b)
    main = const("lambda0") * (b - a) * (1 + log_b) + const("lambda1") * (b - a)
    if log_form:
        return main + SUM_LOG_BOUND * sqrt_enclosure(b) / log_b
    return main + SUM_BOUND * sqrt_enclosure(b)


def certify_sd_constants(n_max: int = FULL_RANGE, n_min_34: int = LOG_FORM_START, threads: int = 2) -> Certificate:
    started = time.perf_counter()
    constants = compute_sd_constants(n_max, n_min_34, threads)
    labels = ["c1 = max (S - g) / n^(1/2)", "c2 = max (g(n + 1) - S) / n^(1/2)",
              "c3 = max (S - g) log n / n^(1/2)", "c4 = max (g(n + 1) - S) log n / n^(1/2)"]
    bounds = [UPPER_BOUND, LOWER_BOUND, UPPER_LOG_BOUND, LOWER_LOG_BOUND]
    terms = list(zip(labels, constants.maxima))
    total = constants.c1 - UPPER_BOUND
    for c, bound in zip(constants.maxima[1:], bounds[1:]):
        total = total.maximum(c - bound)
    checks = [CertificateCheck(f"{label} <= {bound}", c, "<=", bound)
              for label, c, bound in zip(labels, constants.maxima, bounds)]
    inputs = {"n max": n_max, "n min 34": n_min_34, **{f"argmax c{i + 1}": n for i, n in enumerate(constants.argmax)}}
    notes = [f"float64 screening with rounding margin {FLOAT_MARGIN}, argmax re-evaluated on enclosures"]
    certificate = Certificate("sdverify", inputs, terms, total, Fraction(0), notes, checks)
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000)
    return certificate
