from __future__ import absolute_import, annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict

from common.errors import DomainError
from interval.enclosure import Enclosure
from interval.functions import DEFAULT_BITS, log_enclosure, sqrt_enclosure


class NamedConstant:
    """
    A mathematical constant together with a rigorous enclosure of its value.

    Attributes:
        - name: the lookup key
        - enclosure: the enclosure of the value
        - provenance: how the enclosure is obtained
    """

    def __init__(self, name: str, enclosure: Enclosure, provenance: str) -> None:
        self.name = name
        self.enclosure = enclosure
        self.provenance = provenance

    def to_repr(self) -> dict:
        return {
            "name": self.name,
            "enclosure": self.enclosure.to_repr(),
            "provenance": self.provenance,
        }

    def __repr__(self) -> str:
        return f"NamedConstant({self.name}, {self.enclosure!r})"


def _arctan_inverse(m: int, terms: int) -> Enclosure:
    """Bracket arctan(1/m) between two consecutive partial sums of the alternating series."""
    partial = Fraction(0)
    previous = Fraction(0)
    for j in range(terms + 1):
        previous = partial
        partial += Fraction((-1) ** j, (2 * j + 1) * m ** (2 * j + 1))
    return Enclosure(min(previous, partial), max(previous, partial))


def _pi() -> Enclosure:
    terms = DEFAULT_BITS // 4 + 4
    value = 16 * _arctan_inverse(5, terms) - 4 * _arctan_inverse(239, terms)
    return value.clamp(DEFAULT_BITS)


def _decimal(lo: str, hi: str) -> Callable[[], Enclosure]:
    return lambda: Enclosure(Fraction(lo), Fraction(hi))


_CONSTANTS = {
    "pi": (_pi, "Machin formula 16 arctan(1/5) - 4 arctan(1/239), alternating series brackets"),
    "log2": (lambda: log_enclosure(2), "2 atanh(1/3)"),
    "sqrt3": (lambda: sqrt_enclosure(3), "exact integer square root"),
    "sqrt5": (lambda: sqrt_enclosure(5), "exact integer square root"),
    "gamma": (_decimal("0.57721566490153286060", "0.57721566490153286061"), "20 correct decimals"),
    "lambda0": (_decimal("0.607927101854025", "0.607927101854027"), "6/pi^2 rounded outward to 15 decimals"),
    "lambda1": (_decimal("0.786872460166244", "0.786872460166246"), "divisor constant to 15 decimals"),
}


@lru_cache(maxsize=None)
def named_constant(name: str) -> NamedConstant:
    if name not in _CONSTANTS:
        raise DomainError(f"Unknown constant [{name}]")
    builder, provenance = _CONSTANTS[name]
    return NamedConstant(name, builder(), provenance)


def const(name: str) -> Enclosure:
    """
    Return the enclosure of a named constant: pi, e, log2, sqrt3, sqrt5, gamma (Euler-Mascheroni),
    lambda0 and lambda1 (the constants of the asymptotic for the sum of 2^omega(n)).

    :raise DomainError: when the name is unknown
    """
    return named_constant(name).enclosure


def available_constants() -> Dict[str, NamedConstant]:
    return {name: named_constant(name) for name in sorted(_CONSTANTS)}
