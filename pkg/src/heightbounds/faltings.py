from __future__ import absolute_import, annotations

import logging
import math
from fractions import Fraction

import numpy as np

from arithfun.factor import factorize, kronecker
from arithfun.sieve import primes_up_to
from common.errors import DomainError
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure
from quadforms.discriminant import Discriminant


logger = logging.getLogger("singular.heightbounds.faltings")

GAUDRON_REMOND_SHIFT = Fraction("0.72")
HARD_BOUND_CONSTANT = Fraction("9.79")


def lambda_constant() -> Enclosure:
    """lambda = 1/2 - 1/(2 sqrt 5)."""
    return Fraction(1, 2) - 1 / (2 * const("sqrt5"))


def _beta_coefficient(p: int, k: int) -> Fraction:
    """beta(p^k) / log p = (1 - p^-k) / ((p + 1)(1 - p^-1))."""
    return Fraction(p ** k - 1, (p + 1) * (p - 1) * p ** (k - 1))


def beta(n: int) -> Enclosure:
    """
    The additive function beta(n) = sum over p^k || n of log p / (p + 1) * (1 - p^-k) / (1 - p^-1).
    """
    if n < 1:
        raise DomainError(f"beta is defined for positive integers, got [{n}]")
    result = Enclosure.point(0)
    for p, k in factorize(n).factors:
        result = result + _beta_coefficient(p, k) * log_enclosure(p)
    return result


def delta_fn(n: int) -> Enclosure:
    """delta(n) = lambda log n - beta(n)."""
    if n < 1:
        raise DomainError(f"delta is defined for positive integers, got [{n}]")
    return lambda_constant() * log_enclosure(n) - beta(n)


def verify_delta_minimum(limit: int) -> bool:
    """
    Check delta(n) >= delta(2) for every 1 <= n <= limit.

    delta is additive and delta(p^j) - delta(p^(j-1)) = (lambda - 1 / (p^(j-1) (p + 1))) log p, so rigorous lower
    bounds of these increments, scaled by 2^40 and rounded down, are accumulated over the multiples of p^j. For
    even n the increment delta(2) of the factor 2 is left out and the remaining sum must be non negative.
    """
    if limit < 1:
        raise DomainError(f"Limit must be positive, got [{limit}]")
    scale = 1 << 40
    lam = lambda_constant()
    lower = np.zeros(limit + 1, dtype=np.int64)
    for p in primes_up_to(limit):
        log_p = log_enclosure(p, 64)
        power = p
        previous = 1
        while power <= limit:
            if power != 2:
                increment = (lam - Fraction(1, previous * (p + 1))) * log_p
                lower[power::power] += math.floor(increment.lo * scale)
            previous = power
            power *= p
    delta_two_high = math.ceil(delta_fn(2).hi * scale)
    odd = lower[1::2]
    even = lower[2::2]
    holds = bool((odd >= delta_two_high).all()) and bool((even >= 0).all())
    logger.debug(f"delta(n) >= delta(2) for n <= [{limit}]: [{holds}]")
    return holds


def conductor_correction(delta: int) -> Enclosure:
    """
    c(f) = 1/2 sum_{p | f} e_f(p) log p with e_f(p) = (1 - chi(p)) / (p - chi(p)) * (1 - p^-ord_p f) / (1 - p^-1)
    and chi the Kronecker symbol of the fundamental discriminant.
    """
    discriminant = Discriminant.decompose(delta)
    result = Enclosure.point(0)
    for p, k in factorize(discriminant.f).factors:
        result = result + _correction_coefficient(discriminant.D, p, k) * log_enclosure(p)
    return result


def _correction_coefficient(D: int, p: int, k: int) -> Fraction:
    chi = kronecker(D, p)
    return Fraction(1 - chi, 2 * (p - chi)) * Fraction(p ** k - 1, (p - 1) * p ** (k - 1))


def conductor_correction_bounded(delta: int) -> bool:
    """c(f) <= beta(f), decided prime by prime on the exact rational coefficients of log p."""
    discriminant = Discriminant.decompose(delta)
    return all(
        _correction_coefficient(discriminant.D, p, k) <= _beta_coefficient(p, k)
        for p, k in factorize(discriminant.f).factors
    )


class FaltingsLowerBounds:
    """
    Lower bounds for the stable Faltings height of a CM elliptic curve.

    Attributes:
        - delta: the discriminant
        - field_bound: (1/(4 sqrt 5)) log|delta| - gamma - log(2 pi)/2 - (1/(2 sqrt 5) - 1/6) log 2
        - conductor_bound: (1/(4 sqrt 5)) log|delta| + lambda log f - beta(f) - gamma - log(2 pi)/2
    """

    def __init__(self, delta: int, field_bound: Enclosure, conductor_bound: Enclosure) -> None:
        self.delta = delta
        self.field_bound = field_bound
        self.conductor_bound = conductor_bound

    def height_bound(self) -> Enclosure:
        """The height lower bound 12 (h_F + 0.72) implied by the conductor bound."""
        return 12 * (self.conductor_bound + GAUDRON_REMOND_SHIFT)

    def to_repr(self) -> dict:
        return {
            "delta": self.delta,
            "fieldBound": self.field_bound.to_repr(),
            "conductorBound": self.conductor_bound.to_repr(),
        }


def _common_part(x: int) -> Enclosure:
    sqrt5 = const("sqrt5")
    return log_enclosure(x) / (4 * sqrt5) - const("gamma") - log_enclosure(2 * const("pi")) / 2


def faltings_lower(delta: int) -> FaltingsLowerBounds:
    discriminant = Discriminant.decompose(delta)
    common = _common_part(-delta)
    field_bound = common - (1 / (2 * const("sqrt5")) - Fraction(1, 6)) * const("log2")
    conductor_bound = common + lambda_constant() * log_enclosure(discriminant.f) - beta(discriminant.f)
    return FaltingsLowerBounds(delta, field_bound, conductor_bound)


def hard_bound_constant() -> Enclosure:
    """
    12 (gamma + log(2 pi)/2 + (1/(2 sqrt 5) - 1/6) log 2 - 0.72), the constant subtracted in the height lower bound
    (3/sqrt 5) log|delta| - 9.79; it must not exceed 9.79.
    """
    inner = const("gamma") + log_enclosure(2 * const("pi")) / 2 \
        + (1 / (2 * const("sqrt5")) - Fraction(1, 6)) * const("log2") - GAUDRON_REMOND_SHIFT
    return 12 * inner
