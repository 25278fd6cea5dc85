from __future__ import absolute_import, annotations

from fractions import Fraction
from typing import Union

from common.errors import DomainError


Number = Union[int, Fraction, "Enclosure"]

REPR_DIGITS = 24


def _floor_fraction(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil_fraction(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _decimal_string(q: Fraction, upward: bool) -> str:
    """
    Round a rational to REPR_DIGITS significant decimal digits, towards +infinity when `upward`
    and towards -infinity otherwise.
    """
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    magnitude = abs(q)
    exponent = len(str(magnitude.numerator)) - len(str(magnitude.denominator))
    if magnitude < Fraction(10) ** exponent:
        exponent -= 1
    scaled = magnitude * Fraction(10) ** (REPR_DIGITS - 1 - exponent)
    # rounding the magnitude away from zero moves a negative value down
    away = upward if q > 0 else not upward
    mantissa = _ceil_fraction(scaled) if away else _floor_fraction(scaled)
    digits = str(mantissa)
    if len(digits) > REPR_DIGITS:
        exponent += 1
        digits = digits[:REPR_DIGITS]
    fraction_digits = digits[1:].rstrip("0")
    body = digits[0] + ("." + fraction_digits if fraction_digits else "")
    return f"{sign}{body}e{exponent}"


class Enclosure:
    """
    A closed interval [lo, hi] with exact rational endpoints, guaranteed to contain a real quantity.

    Arithmetic is exact. Transcendental functions (see `interval.functions`) round their result
    outward to dyadic endpoints, and `clamp` performs the same outward rounding on demand.

    Attributes:
        - lo: the lower endpoint
        - hi: the upper endpoint
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Union[int, Fraction], hi: Union[int, Fraction, None] = None) -> None:
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise DomainError(f"Empty enclosure [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def point(value: Union[int, Fraction]) -> Enclosure:
        return Enclosure(value, value)

    @staticmethod
    def coerce(value: Number) -> Enclosure:
        if isinstance(value, Enclosure):
            return value
        if isinstance(value, (int, Fraction)):
            return Enclosure(value, value)
        raise TypeError(f"Can not build an enclosure from [{type(value)}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Union[int, Fraction]) -> bool:
        return self.lo <= value <= self.hi

    def is_below(self, bound: Union[int, Fraction]) -> bool:
        """Whether every point of the enclosure is strictly below `bound`."""
        return self.hi < bound

    def is_above(self, bound: Union[int, Fraction]) -> bool:
        return self.lo > bound

    def is_positive(self) -> bool:
        return self.lo > 0

    def hull(self, other: Number) -> Enclosure:
        other = Enclosure.coerce(other)
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def maximum(self, other: Number) -> Enclosure:
        """Enclosure of max(x, y) for x in self and y in other."""
        other = Enclosure.coerce(other)
        return Enclosure(max(self.lo, other.lo), max(self.hi, other.hi))

    def clamp(self, bits: int) -> Enclosure:
        """
        Round the endpoints outward to multiples of 2^-bits.

        :param bits: the number of fractional binary digits kept
        :return: an enclosure containing this one
        """
        scale = 1 << bits
        return Enclosure(
            Fraction(_floor_fraction(self.lo * scale), scale),
            Fraction(_ceil_fraction(self.hi * scale), scale)
        )

    def __add__(self, other: Number) -> Enclosure:
        other = Enclosure.coerce(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __radd__(self, other: Number) -> Enclosure:
        return self.__add__(other)

    def __neg__(self) -> Enclosure:
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other: Number) -> Enclosure:
        other = Enclosure.coerce(other)
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other: Number) -> Enclosure:
        return Enclosure.coerce(other).__sub__(self)

    def __mul__(self, other: Number) -> Enclosure:
        other = Enclosure.coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Enclosure(min(products), max(products))

    def __rmul__(self, other: Number) -> Enclosure:
        return self.__mul__(other)

    def __truediv__(self, other: Number) -> Enclosure:
        other = Enclosure.coerce(other)
        if other.lo <= 0 <= other.hi:
            raise DomainError(f"Division by an enclosure containing zero [{other.lo}, {other.hi}]")
        return self.__mul__(Enclosure(1 / other.hi, 1 / other.lo))

    def __rtruediv__(self, other: Number) -> Enclosure:
        return Enclosure.coerce(other).__truediv__(self)

    def __pow__(self, exponent: int) -> Enclosure:
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"Only non negative integer powers are supported, got [{exponent}]")
        result = Enclosure.point(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, Enclosure):
            return False
        return self.lo == o.lo and self.hi == o.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Enclosure[{float(self.lo)!r}, {float(self.hi)!r}]"

    def to_repr(self) -> dict:
        return {
            "lo": _decimal_string(self.lo, upward=False),
            "hi": _decimal_string(self.hi, upward=True),
        }

    @staticmethod
    def from_repr(raw: dict) -> Enclosure:
        return Enclosure(Fraction(raw["lo"]), Fraction(raw["hi"]))


def add(x: Number, y: Number) -> Enclosure:
    return Enclosure.coerce(x) + y


def sub(x: Number, y: Number) -> Enclosure:
    return Enclosure.coerce(x) - y


def mul(x: Number, y: Number) -> Enclosure:
    return Enclosure.coerce(x) * y


def div(x: Number, y: Number) -> Enclosure:
    return Enclosure.coerce(x) / y
