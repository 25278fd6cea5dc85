from __future__ import absolute_import, annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Tuple

import numpy as np

from arithfun.factor import sigma1 as arithmetic_sigma1
from arithfun.sieve import SIEVE_CAP, DivisorData, primes_up_to, segmented_divisor_data
from common.errors import DomainError, ResourceCapError
from excluder.isqrt import isqrt
from interval.enclosure import Enclosure
from rangecert.certificate import Certificate, CertificateCheck
from sdverify.sums import SEGMENT_LENGTH


logger = logging.getLogger("singular.sdverify.sigma")

SIGMA_LIMIT = 32 * 10 ** 6
SIGMA1_RECORD = 21621600
SIGMA1_RATIO = Fraction(3472, 715)
# sigma0(n) <= 8.5 n^(1/4) is decided as (2 sigma0(n))^4 <= 17^4 n
SIGMA0_NUMERATOR = 17
SIGMA0_DENOMINATOR = 2


class SigmaExtremes:
    """
    The largest sigma1(n) / n and the largest (2 sigma0(n))^4 / (17^4 n) over 1 <= n <= limit, both exact.

    Attributes:
        - limit: the end of the range
        - sigma1_ratio: max sigma1(n) / n
        - sigma1_argmax: the smallest n attaining it
        - sigma0_ratio: max (2 sigma0(n))^4 / (17^4 n), at most 1 exactly when sigma0(n) <= 8.5 n^(1/4)
        - sigma0_argmax: the smallest n attaining it
    """

    def __init__(self, limit: int, sigma1_ratio: Fraction, sigma1_argmax: int, sigma0_ratio: Fraction,
                 sigma0_argmax: int) -> None:
        self.limit = limit
        self.sigma1_ratio = sigma1_ratio
        self.sigma1_argmax = sigma1_argmax
        self.sigma0_ratio = sigma0_ratio
        self.sigma0_argmax = sigma0_argmax

    def holds(self) -> bool:
        sigma1_holds = self.sigma1_ratio <= SIGMA1_RATIO
        if self.limit >= SIGMA1_RECORD:
            sigma1_holds = sigma1_holds and self.sigma1_ratio == SIGMA1_RATIO and self.sigma1_argmax == SIGMA1_RECORD
        return sigma1_holds and self.sigma0_ratio <= 1

    def to_repr(self) -> dict:
        return {
            "limit": self.limit,
            "sigma1Ratio": str(self.sigma1_ratio),
            "sigma1Argmax": self.sigma1_argmax,
            "sigma0Ratio": str(self.sigma0_ratio),
            "sigma0Argmax": self.sigma0_argmax,
        }

    @staticmethod
    def from_repr(raw: dict) -> SigmaExtremes:
        return SigmaExtremes(
            raw["limit"],
            Fraction(raw["sigma1Ratio"]),
            raw["sigma1Argmax"],
            Fraction(raw["sigma0Ratio"]),
            raw["sigma0Argmax"]
        )

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, SigmaExtremes):
            return False
        return o.to_repr() == self.to_repr()


def _block_extremes(data: DivisorData) -> Tuple[Fraction, int, Fraction, int]:
    n = np.arange(data.lo, data.hi, dtype=np.int64)
    # float ratios only locate the candidates, the comparison below is exact
    ratio1 = data.sigma1 / n
    candidates1 = np.nonzero(ratio1 >= ratio1.max() * (1 - 1e-9))[0]
    best1 = max((Fraction(int(data.sigma1[i]), int(n[i])), -int(n[i])) for i in candidates1)
    fourth = (SIGMA0_DENOMINATOR * data.sigma0).astype(np.float64) ** 4 / (SIGMA0_NUMERATOR ** 4 * n)
    candidates0 = np.nonzero(fourth >= fourth.max() * (1 - 1e-9))[0]
    best0 = max((Fraction((SIGMA0_DENOMINATOR * int(data.sigma0[i])) ** 4, SIGMA0_NUMERATOR ** 4 * int(n[i])),
                 -int(n[i])) for i in candidates0)
    return best1[0], -best1[1], best0[0], -best0[1]


def compute_sigma_extremes(limit: int = SIGMA_LIMIT, threads: int = 2) -> SigmaExtremes:
    """
    Segmented sieve of sigma0 and sigma1 over [1, limit].

    :raise ResourceCapError: if limit exceeds the configured sieve cap
    """
    if limit < 1:
        raise DomainError(f"Limit must be positive, got [{limit}]")
    if limit > SIEVE_CAP:
        raise ResourceCapError(f"Sigma extremes up to [{limit}] exceed the configured cap [{SIEVE_CAP}]")
    started = time.perf_counter()
    base_primes = primes_up_to(isqrt(limit) + 1)
    segments = [(lo, min(lo + SEGMENT_LENGTH, limit + 1)) for lo in range(1, limit + 1, SEGMENT_LENGTH)]

    def sieve(segment: Tuple[int, int]) -> Tuple[Fraction, int, Fraction, int]:
        return _block_extremes(segmented_divisor_data(segment[0], segment[1], base_primes))

    best1 = (Fraction(0), 0)
    best0 = (Fraction(0), 0)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        for ratio1, argmax1, ratio0, argmax0 in executor.map(sieve, segments):
            # strict comparison keeps the smallest argmax as segments come in increasing order
            if ratio1 > best1[0]:
                best1 = (ratio1, argmax1)
            if ratio0 > best0[0]:
                best0 = (ratio0, argmax0)
    extremes = SigmaExtremes(limit, best1[0], best1[1], best0[0], best0[1])
    logger.info(f"Sigma extremes up to [{limit}] in [{int((time.perf_counter() - started) * 1000)}] ms: "
                f"sigma1/n max [{extremes.sigma1_ratio}] at [{extremes.sigma1_argmax}], "
                f"sigma0 ratio max [{float(extremes.sigma0_ratio)}] at [{extremes.sigma0_argmax}]")
    return extremes


def verify_sigma_extremes(limit: int = SIGMA_LIMIT, threads: int = 2) -> bool:
    """
    sigma1(n) / n <= 3472/715 with equality at 21621600, and sigma0(n) <= 8.5 n^(1/4), for 1 <= n <= limit.
    """
    return compute_sigma_extremes(limit, threads).holds()


def certify_sigma_extremes(limit: int = SIGMA_LIMIT, threads: int = 2) -> Certificate:
    started = time.perf_counter()
    extremes = compute_sigma_extremes(limit, threads)
    sigma1 = Enclosure.point(extremes.sigma1_ratio)
    sigma0 = Enclosure.point(extremes.sigma0_ratio)
    terms = [
        ("max sigma1(n) / n", sigma1),
        ("max (2 sigma0(n))^4 / (17^4 n)", sigma0),
    ]
    record = Enclosure.point(Fraction(arithmetic_sigma1(SIGMA1_RECORD), SIGMA1_RECORD))
    checks = [
        CertificateCheck("max sigma1(n) / n <= 3472/715", sigma1, "<=", SIGMA1_RATIO),
        CertificateCheck("sigma1(21621600) / 21621600 >= 3472/715", record, ">=", SIGMA1_RATIO),
        CertificateCheck("sigma1(21621600) / 21621600 <= 3472/715", record, "<=", SIGMA1_RATIO),
    ]
    if limit >= SIGMA1_RECORD:
        checks.append(CertificateCheck("max sigma1(n) / n >= 3472/715", sigma1, ">=", SIGMA1_RATIO))
    inputs = {"limit": limit, "sigma1 argmax": extremes.sigma1_argmax, "sigma0 argmax": extremes.sigma0_argmax}
    # the sigma1 bound is attained, so only the sigma0 ratio is compared strictly
    certificate = Certificate("sigma-extremes", inputs, terms, sigma0, Fraction(1), checks=checks)
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000)
    return certificate
