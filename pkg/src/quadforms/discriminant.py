from __future__ import absolute_import, annotations

from arithfun.factor import factorize
from common.errors import DomainError


def validate_discriminant(delta: int) -> None:
    """
    :raise DomainError: unless delta is negative and congruent to 0 or 1 modulo 4
    """
    if delta >= 0:
        raise DomainError(f"Discriminant [{delta}] must be negative")
    if delta % 4 not in (0, 1):
        raise DomainError(f"Discriminant [{delta}] is not congruent to 0 or 1 modulo 4")


class Discriminant:
    """
    A negative discriminant delta = D f^2 of an imaginary quadratic order.

    Attributes:
        - delta: the discriminant
        - D: the fundamental discriminant of the field
        - f: the conductor of the order
        - f_tilde: the modified conductor, f when D is odd and 2f otherwise, so that delta / f_tilde^2 is square-free
    """

    def __init__(self, delta: int, D: int, f: int, f_tilde: int) -> None:
        self.delta = delta
        self.D = D
        self.f = f
        self.f_tilde = f_tilde

    @property
    def absolute(self) -> int:
        return -self.delta

    @staticmethod
    def decompose(delta: int) -> Discriminant:
        """
        Split delta into fundamental discriminant and conductor by extracting the largest square factor of
        |delta| compatible with the congruence conditions of a fundamental discriminant.

        :param delta: a negative integer congruent to 0 or 1 modulo 4
        :return: the decomposition
        :raise DomainError: if delta is not a discriminant
        """
        validate_discriminant(delta)
        square_free = 1
        square_root = 1
        for p, e in factorize(-delta).factors:
            if e % 2:
                square_free *= p
            square_root *= p ** (e // 2)
        if -square_free % 4 == 1:
            return Discriminant(delta, -square_free, square_root, square_root)
        # -square_free is 2 or 3 mod 4, so the square part of |delta| carries a factor 4
        assert square_root % 2 == 0
        return Discriminant(delta, -4 * square_free, square_root // 2, square_root)

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, Discriminant):
            return False
        return self.delta == o.delta and self.D == o.D and self.f == o.f and self.f_tilde == o.f_tilde

    def __repr__(self) -> str:
        return f"Discriminant({self.delta}, D={self.D}, f={self.f}, f_tilde={self.f_tilde})"

    def to_repr(self) -> dict:
        return {
            "delta": self.delta,
            "D": self.D,
            "f": self.f,
            "fTilde": self.f_tilde,
        }

    @staticmethod
    def from_repr(raw: dict) -> Discriminant:
        return Discriminant(raw["delta"], raw["D"], raw["f"], raw["fTilde"])
