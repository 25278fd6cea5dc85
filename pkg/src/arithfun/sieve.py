from __future__ import absolute_import, annotations

import logging
import threading
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from arithfun.factor import FactoredInteger
from common.errors import DomainError, ResourceCapError
from common.utils import Utils
from excluder.isqrt import isqrt


logger = logging.getLogger("singular.arithfun.sieve")

SIEVE_CAP = Utils.env_int("SINGULAR_SIEVE_CAP", 256_000_000)


def _check_cap(limit: int) -> None:
    if limit > SIEVE_CAP:
        raise ResourceCapError(f"Sieve up to [{limit}] exceeds the configured cap [{SIEVE_CAP}]")


class SmallestPrimeFactorSieve:
    """
    Table of smallest prime factors up to `limit`, from which omega, sigma0, sigma1 and the factorisation
    of every n <= limit are read off without trial division.

    Attributes:
        - limit: the largest integer covered
        - spf: numpy array where spf[n] is the smallest prime factor of n (spf[1] = 1)
    """

    def __init__(self, limit: int) -> None:
        if limit < 1:
            raise DomainError(f"Sieve limit must be positive, got [{limit}]")
        _check_cap(limit)
        self.limit = limit
        self.spf = np.zeros(limit + 1, dtype=np.int32)
        for p in range(2, isqrt(limit) + 1):
            if self.spf[p] == 0:
                multiples = self.spf[p * p::p]
                multiples[multiples == 0] = p
        unmarked = np.nonzero(self.spf == 0)[0]
        self.spf[unmarked] = unmarked
        self.spf[0] = 0
        self.spf[1] = 1
        self._primes = None  # type: Optional[np.ndarray]
        self._omega = None  # type: Optional[np.ndarray]
        logger.debug(f"Built smallest prime factor sieve up to [{limit}]")

    @property
    def primes(self) -> np.ndarray:
        if self._primes is None:
            candidates = np.arange(self.limit + 1, dtype=np.int64)
            self._primes = np.nonzero((self.spf == candidates) & (candidates >= 2))[0]
        return self._primes

    @property
    def omega_table(self) -> np.ndarray:
        """Array whose entry n is omega(n); entries 0 and 1 hold 0."""
        if self._omega is None:
            table = np.zeros(self.limit + 1, dtype=np.uint8)
            for p in self.primes.tolist():
                table[p::p] += 1
            self._omega = table
        return self._omega

    def _check_range(self, n: int) -> None:
        if n < 1 or n > self.limit:
            raise DomainError(f"Value [{n}] is outside of the sieve range [1, {self.limit}]")

    def factorize(self, n: int) -> FactoredInteger:
        self._check_range(n)
        factors = []  # type: List[Tuple[int, int]]
        rest = n
        while rest > 1:
            p = int(self.spf[rest])
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        return FactoredInteger(n, factors)

    def omega(self, n: int) -> int:
        self._check_range(n)
        return int(self.omega_table[n])

    def sigma0(self, n: int) -> int:
        result = 1
        for _, e in self.factorize(n).factors:
            result *= e + 1
        return result

    def sigma1(self, n: int) -> int:
        result = 1
        for p, e in self.factorize(n).factors:
            result *= (p ** (e + 1) - 1) // (p - 1)
        return result


class _SharedSieve:

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._sieve = None  # type: Optional[SmallestPrimeFactorSieve]

    def get(self, limit: int) -> SmallestPrimeFactorSieve:
        with self._lock:
            if self._sieve is None or self._sieve.limit < limit:
                size = max(limit, 2 * self._sieve.limit if self._sieve is not None else 1 << 16)
                self._sieve = SmallestPrimeFactorSieve(min(size, max(limit, SIEVE_CAP)))
            return self._sieve


_shared = _SharedSieve()


def shared_sieve(limit: int) -> SmallestPrimeFactorSieve:
    """A process wide sieve covering at least `limit`, grown on demand."""
    return _shared.get(limit)


def primes_up_to(limit: int) -> List[int]:
    if limit < 2:
        return []
    primes = shared_sieve(limit).primes
    return primes[primes <= limit].tolist()


def pow2_omega_max(limit: int) -> int:
    """
    F = max of 2^omega(a) over 1 <= a <= limit, read from the sieve table.

    :raise DomainError: if limit < 1
    """
    if limit < 1:
        raise DomainError(f"pow2_omega_max needs a positive limit, got [{limit}]")
    table = shared_sieve(limit).omega_table
    return 1 << int(table[1:limit + 1].max())


def primorial_omega_max(limit: int) -> int:
    """The largest k with p_1 * ... * p_k <= limit, which is the maximum of omega on [1, limit]."""
    if limit < 1:
        raise DomainError(f"primorial_omega_max needs a positive limit, got [{limit}]")
    product = 1
    count = 0
    candidate = 2
    while True:
        if all(candidate % d for d in range(2, isqrt(candidate) + 1)):
            if product * candidate > limit:
                return count
            product *= candidate
            count += 1
        candidate += 1


class PrefixSum2Omega:
    """
    Prefix sums S(n) = sum_{k <= n} 2^omega(k) for 0 <= n <= limit, with S(0) = 0.

    Attributes:
        - limit: the largest n covered
        - sums: numpy int64 array of the prefix sums
    """

    def __init__(self, limit: int, sums: np.ndarray) -> None:
        self.limit = limit
        self.sums = sums

    def at(self, x: Union[int, Fraction]) -> int:
        """S(x) for a real x >= 0, i.e. S(floor(x)); S(x) = 0 for x < 1."""
        if x < 0:
            raise DomainError(f"S(x) is defined for x >= 0, got [{x}]")
        n = int(x // 1)
        if n > self.limit:
            raise DomainError(f"Value [{x}] is beyond the prefix sum range [{self.limit}]")
        return int(self.sums[n])


def prefix_sum_2omega(limit: int) -> PrefixSum2Omega:
    if limit < 0:
        raise DomainError(f"Prefix sum limit must be non negative, got [{limit}]")
    table = shared_sieve(max(limit, 1)).omega_table[:limit + 1]
    weights = np.left_shift(np.int64(1), table.astype(np.int64))
    weights[0] = 0
    return PrefixSum2Omega(limit, np.cumsum(weights, dtype=np.int64))


class DivisorData:
    """
    omega, sigma0 and sigma1 of every n in [lo, hi).
    """

    def __init__(self, lo: int, hi: int, omega: np.ndarray, sigma0: Optional[np.ndarray],
                 sigma1: Optional[np.ndarray]) -> None:
        self.lo = lo
        self.hi = hi
        self.omega = omega
        self.sigma0 = sigma0
        self.sigma1 = sigma1


def segmented_divisor_data(lo: int, hi: int, base_primes: List[int], with_sigma: bool = True) -> DivisorData:
    """
    Segmented sieve over [lo, hi): every base prime is divided out of its multiples, a remaining cofactor
    greater than 1 is one more prime.

    :param lo: first integer of the segment, at least 1
    :param hi: end of the segment (excluded)
    :param base_primes: all primes up to isqrt(hi - 1)
    :param with_sigma: whether sigma0 and sigma1 are computed as well
    :return: the divisor data of the segment
    """
    if lo < 1 or hi <= lo:
        raise DomainError(f"Invalid segment [{lo}, {hi})")
    size = hi - lo
    rest = np.arange(lo, hi, dtype=np.int64)
    omega = np.zeros(size, dtype=np.int8)
    sigma0 = np.ones(size, dtype=np.int64) if with_sigma else None
    sigma1 = np.ones(size, dtype=np.int64) if with_sigma else None
    for p in base_primes:
        start = (-lo) % p
        if start >= size:
            continue
        view = rest[start::p]
        omega[start::p] += 1
        exponent = np.zeros(view.shape[0], dtype=np.int64)
        power = np.ones(view.shape[0], dtype=np.int64)
        power_sum = np.ones(view.shape[0], dtype=np.int64)
        divisible = np.ones(view.shape[0], dtype=bool)
        while divisible.any():
            view[divisible] //= p
            exponent[divisible] += 1
            if with_sigma:
                power[divisible] *= p
                power_sum[divisible] += power[divisible]
            divisible = view % p == 0
        if with_sigma:
            sigma0[start::p] *= exponent + 1
            sigma1[start::p] *= power_sum
    leftover = rest > 1
    omega[leftover] += 1
    if with_sigma:
        sigma0[leftover] *= 2
        sigma1[leftover] *= rest[leftover] + 1
    return DivisorData(lo, hi, omega, sigma0, sigma1)
