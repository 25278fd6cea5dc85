from __future__ import absolute_import, annotations

import logging
import math
from functools import lru_cache
from typing import List, Tuple, Union

import mpmath

from common.errors import DomainError
from quadforms.forms import UpperHalfPoint


logger = logging.getLogger("singular.jnum.jfunction")

MIN_IMAGINARY_PART = mpmath.mpf(1) / 2
MAX_TERMS = 4000


class ComplexApprox:
    """
    A complex number known up to a radius: the exact value lies within `err` of `value`. Not certified, the
    radius only accounts for the truncations made here and trusts mpmath's arithmetic.

    Attributes:
        - value: the mpmath complex approximation
        - err: the radius
    """

    def __init__(self, value: Union[mpmath.mpc, mpmath.mpf, int], err: Union[mpmath.mpf, int] = 0) -> None:
        self.value = mpmath.mpc(value)
        self.err = mpmath.mpf(err)

    @property
    def re(self) -> mpmath.mpf:
        return self.value.real

    @property
    def im(self) -> mpmath.mpf:
        return self.value.imag

    def __abs__(self) -> mpmath.mpf:
        return abs(self.value)

    def __add__(self, other: Union[ComplexApprox, int]) -> ComplexApprox:
        other = other if isinstance(other, ComplexApprox) else ComplexApprox(other)
        return ComplexApprox(self.value + other.value, self.err + other.err)

    def __radd__(self, other: int) -> ComplexApprox:
        return self + other

    def __mul__(self, other: Union[ComplexApprox, int]) -> ComplexApprox:
        other = other if isinstance(other, ComplexApprox) else ComplexApprox(other)
        err = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return ComplexApprox(self.value * other.value, err)

    def __rmul__(self, other: int) -> ComplexApprox:
        return self * other

    def __neg__(self) -> ComplexApprox:
        return ComplexApprox(-self.value, self.err)

    def nearest_integer(self) -> int:
        return int(mpmath.nint(self.re))

    def is_integral(self, tolerance: mpmath.mpf = mpmath.mpf(10) ** -10) -> bool:
        """Whether an integer lies within err + tolerance of the value."""
        slack = self.err + tolerance
        return abs(self.im) <= slack and abs(self.re - self.nearest_integer()) <= slack

    def contains(self, value: Union[int, mpmath.mpc]) -> bool:
        return abs(self.value - value) <= self.err

    def __repr__(self) -> str:
        return f"ComplexApprox({mpmath.nstr(self.value, 20)} +/- {mpmath.nstr(self.err, 3)})"


def _multiply(left: List[int], right: List[int], length: int) -> List[int]:
    result = [0] * length
    for i, x in enumerate(left[:length]):
        if x:
            for k, y in enumerate(right[:length - i]):
                result[i + k] += x * y
    return result


def _euler_product(length: int) -> List[int]:
    """prod_{n >= 1} (1 - q^n) up to q^(length - 1), from the pentagonal number theorem."""
    coefficients = [0] * length
    coefficients[0] = 1
    m = 1
    while m * (3 * m - 1) // 2 < length:
        sign = -1 if m % 2 else 1
        for pentagonal in (m * (3 * m - 1) // 2, m * (3 * m + 1) // 2):
            if pentagonal < length:
                coefficients[pentagonal] = sign
        m += 1
    return coefficients


def _power(series: List[int], exponent: int, length: int) -> List[int]:
    result = [1] + [0] * (length - 1)
    base = series
    while exponent:
        if exponent & 1:
            result = _multiply(result, base, length)
        base = _multiply(base, base, length)
        exponent >>= 1
    return result


def _inverse(series: List[int], length: int) -> List[int]:
    """Inverse of an integer power series with constant term 1."""
    inverse = [0] * length
    inverse[0] = 1
    for n in range(1, length):
        inverse[n] = -sum(series[k] * inverse[n - k] for k in range(1, n + 1))
    return inverse


@lru_cache(maxsize=None)
def j_coefficients(count: int) -> Tuple[int, ...]:
    """
    c(-1), c(0), ..., c(count - 2) of j = sum c(n) q^n, computed exactly as E4^3 / Delta with
    E4 = 1 + 240 sum sigma3(n) q^n and Delta = q prod (1 - q^n)^24.
    """
    if count < 2:
        raise DomainError(f"At least two coefficients are needed, got [{count}]")
    e4 = [1] + [240 * sum(d ** 3 for d in range(1, n + 1) if n % d == 0) for n in range(1, count)]
    e4_cubed = _power(e4, 3, count)
    delta_over_q = _power(_euler_product(count), 24, count)
    coefficients = _multiply(e4_cubed, _inverse(delta_over_q, count), count)
    logger.debug(f"Computed [{count}] coefficients of the j q-expansion")
    return tuple(coefficients)


def _coefficient_bound(n: int) -> mpmath.mpf:
    """c(n) <= exp(4 pi sqrt(n)) for n >= 1."""
    return mpmath.exp(4 * mpmath.pi * mpmath.sqrt(n))


def _truncation(abs_q: mpmath.mpf, y: mpmath.mpf, precision: int) -> Tuple[int, mpmath.mpf]:
    """
    The number of terms after which the tail sum_{n > N} c(n) |q|^n, dominated by a geometric series, is below
    10^-(precision + 2), together with the tail bound.
    """
    target = mpmath.mpf(10) ** -(precision + 2)
    n = max(16, int(4 / (y * y)) + 1)
    while n < MAX_TERMS:
        ratio = mpmath.exp(2 * mpmath.pi / mpmath.sqrt(n) - 2 * mpmath.pi * y)
        if ratio < 1:
            tail = _coefficient_bound(n + 1) * abs_q ** (n + 1) / (1 - ratio)
            if tail < target:
                return n, tail
        n += 8
    raise DomainError(f"Can not reach precision [{precision}] at imaginary part [{mpmath.nstr(y, 10)}]")


def j_eval(tau: UpperHalfPoint, precision: int = 30) -> ComplexApprox:
    """
    Evaluate Klein's j from its q-expansion, q = exp(2 pi i tau).

    The radius covers the truncated tail and the uncertainty of tau itself, through a bound on |j'| near tau.

    :param tau: a point with imaginary part at least 1/2
    :param precision: number of decimal digits targeted for the truncation
    :return: the approximation of j(tau)
    :raise DomainError: if the imaginary part of tau is below 1/2
    """
    if tau.im < MIN_IMAGINARY_PART:
        raise DomainError(f"j_eval needs Im(tau) >= 1/2, got [{mpmath.nstr(tau.im, 10)}]")
    digits = int(2 * math.pi * float(tau.im) / math.log(10)) + precision + 10
    with mpmath.workdps(digits):
        z = tau.to_mpc()
        q = mpmath.exp(2j * mpmath.pi * z)
        abs_q = abs(q)
        terms, tail = _truncation(abs_q, tau.im, precision)
        coefficients = j_coefficients(terms + 2)
        total = mpmath.mpc(0)
        derivative = mpmath.mpf(0)
        power = 1 / q
        for n, c in enumerate(coefficients, start=-1):
            total += c * power
            derivative += abs(n * c) * abs(power)
            power *= q
        # |j'| <= 2 pi sum |n c(n)| |q|^n, doubled for the neighbourhood of tau and the tail
        err = tail + 4 * mpmath.pi * derivative * tau.radius + mpmath.mpf(10) ** -(digits - 5) * abs(total)
        return ComplexApprox(total, err)
