from __future__ import absolute_import, annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Union

from arithfun.sieve import primes_up_to
from common.errors import DomainError
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure


logger = logging.getLogger("singular.arithfun.robin")

ROBIN_PRIME_BOUND = 1129
ROBIN_PRIME_COUNT = 189
ROBIN_C1_BOUND = Fraction("1.1713142")


@lru_cache(maxsize=None)
def robin_c1() -> Enclosure:
    """
    Enclosure of c1 = log log N1 - log N1 / omega(N1) where N1 is the product of the primes up to 1129.
    Robin's inequality omega(n) <= log n / (log log n - c1) holds for every n >= 3 with this constant.

    :return: the enclosure of c1
    """
    primes = primes_up_to(ROBIN_PRIME_BOUND)
    if len(primes) != ROBIN_PRIME_COUNT:
        raise ArithmeticError(
            f"Expected [{ROBIN_PRIME_COUNT}] primes up to [{ROBIN_PRIME_BOUND}], found [{len(primes)}]")
    n1 = 1
    for p in primes:
        n1 *= p
    log_n1 = log_enclosure(n1)
    c1 = log_enclosure(log_n1) - log_n1 / ROBIN_PRIME_COUNT
    logger.debug(f"Robin constant enclosed in [{float(c1.lo)}, {float(c1.hi)}]")
    return c1


def robin_g(x: Union[int, Fraction, Enclosure]) -> Enclosure:
    """
    g(x) = log x / (log log x - c1), the bound on omega(n) for n <= x once x >= 26.

    :raise DomainError: when log log x <= c1
    """
    log_x = log_enclosure(x)
    denominator = log_enclosure(log_x) - robin_c1()
    if not denominator.is_positive():
        raise DomainError(f"log log x does not exceed the Robin constant for x = [{x}]")
    return log_x / denominator


def robin_omega_bound(x: Union[int, Fraction, Enclosure]) -> Enclosure:
    """
    Enclosure of (1/2) log X / (log log X - c1 - log 2), the bound on omega(a) for every a <= X^(1/2).

    :param x: the bound X on |Delta|
    :return: the enclosure of the bound
    """
    log_x = log_enclosure(x)
    denominator = log_enclosure(log_x) - robin_c1() - const("log2")
    if not denominator.is_positive():
        raise DomainError(f"Robin bound not applicable for X = [{x}]")
    return log_x / (2 * denominator)
