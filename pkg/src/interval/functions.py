from __future__ import absolute_import, annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

from common.errors import DomainError
from excluder.isqrt import isqrt
from interval.enclosure import Enclosure


logger = logging.getLogger("singular.interval.functions")

DEFAULT_BITS = 128
GUARD_BITS = 16

SUPPORTED_POWERS = (Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2), Fraction(2), Fraction(3))


def _atanh_scaled(numerator: int, denominator: int, precision: int) -> Tuple[int, int]:
    """
    Bracket atanh(t) * 2^precision for a rational 0 <= t = numerator / denominator <= 1/3.

    The series sum t^(2j+1) / (2j+1) is evaluated in fixed point: the lower sum rounds every term down,
    the upper sum rounds every term up and adds the geometric tail bound t^(2J+1) / (1 - t^2) <= 9/8 t^(2J+1).

    :return: a pair (lower, upper) of integers
    """
    scale = 1 << precision
    z_low = (numerator * scale) // denominator
    z_high = -((-numerator * scale) // denominator)
    square_low = z_low * z_low
    square_high = z_high * z_high
    scale_squared = scale * scale
    power_low = z_low
    power_high = z_high
    lower = 0
    upper = 0
    k = 1
    while power_high > 16:
        lower += power_low // k
        upper += -((-power_high) // k)
        power_low = (power_low * square_low) // scale_squared
        power_high = -((-power_high * square_high) // scale_squared)
        k += 2
    upper += -((-power_high * 9) // 8)
    return lower, upper


@lru_cache(maxsize=None)
def _log2_scaled(precision: int) -> Tuple[int, int]:
    lower, upper = _atanh_scaled(1, 3, precision)
    return 2 * lower, 2 * upper


def _log_rational(q: Fraction, bits: int) -> Enclosure:
    if q <= 0:
        raise DomainError(f"Logarithm of non positive value [{q}]")
    if q == 1:
        return Enclosure.point(0)
    precision = bits + GUARD_BITS + max(q.numerator.bit_length(), q.denominator.bit_length()).bit_length()
    k = q.numerator.bit_length() - q.denominator.bit_length()
    m = q / (Fraction(2) ** k)
    z = (m - 1) / (m + 1)
    log2_low, log2_high = _log2_scaled(precision)
    if z >= 0:
        atanh_low, atanh_high = _atanh_scaled(z.numerator, z.denominator, precision)
    else:
        high, low = _atanh_scaled(-z.numerator, z.denominator, precision)
        atanh_low, atanh_high = -low, -high
    if k >= 0:
        shift_low, shift_high = k * log2_low, k * log2_high
    else:
        shift_low, shift_high = k * log2_high, k * log2_low
    scale = 1 << precision
    result = Enclosure(
        Fraction(shift_low + 2 * atanh_low, scale),
        Fraction(shift_high + 2 * atanh_high, scale)
    )
    return result.clamp(bits)


def log_enclosure(x: Union[int, Fraction, Enclosure], bits: int = DEFAULT_BITS) -> Enclosure:
    """
    Enclose the natural logarithm of every point of `x`.

    The argument is reduced to m in (1/2, 2) through x = 2^k m and log m = 2 atanh((m - 1) / (m + 1)).

    :param x: a positive value or enclosure
    :param bits: binary digits kept after the outward rounding of the result
    :return: the enclosure of log x
    """
    x = Enclosure.coerce(x)
    if x.lo <= 0:
        raise DomainError(f"Logarithm of enclosure [{x.lo}, {x.hi}] that is not positive")
    low = _log_rational(x.lo, bits)
    if x.hi == x.lo:
        return low
    return Enclosure(low.lo, _log_rational(x.hi, bits).hi)


def _sqrt_floor(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(isqrt((q.numerator * scale * scale) // q.denominator), scale)


def _sqrt_ceil(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    target = -((-q.numerator * scale * scale) // q.denominator)
    root = isqrt(target)
    if root * root < target:
        root += 1
    return Fraction(root, scale)


def sqrt_enclosure(x: Union[int, Fraction, Enclosure], bits: int = DEFAULT_BITS) -> Enclosure:
    """
    Enclose the square root of every point of `x` using exact integer square roots.

    :param x: a non negative value or enclosure
    :param bits: binary digits of the dyadic endpoints
    :return: the enclosure of sqrt(x)
    """
    x = Enclosure.coerce(x)
    if x.lo < 0:
        raise DomainError(f"Square root of enclosure [{x.lo}, {x.hi}] that is not non negative")
    return Enclosure(_sqrt_floor(x.lo, bits), _sqrt_ceil(x.hi, bits))


def pow_enclosure(x: Union[int, Fraction, Enclosure], k: Union[int, Fraction],
                  bits: int = DEFAULT_BITS) -> Enclosure:
    """
    Enclose x^k for k in SUPPORTED_POWERS. Fractional powers are built from repeated square roots, which
    are monotone, so the result stays outward rounded.
    """
    x = Enclosure.coerce(x)
    k = Fraction(k)
    if k not in SUPPORTED_POWERS:
        raise DomainError(f"Unsupported exponent [{k}]")
    if k.denominator == 1:
        return x ** k.numerator
    if x.lo < 0:
        raise DomainError(f"Fractional power of enclosure [{x.lo}, {x.hi}] that is not non negative")
    result = x ** k.numerator
    roots = k.denominator.bit_length() - 1
    for _ in range(roots):
        result = sqrt_enclosure(result, bits + GUARD_BITS)
    return result.clamp(bits)
