from __future__ import absolute_import, annotations

import math
from typing import Iterator, List

import mpmath

from common.errors import DomainError
from excluder.isqrt import isqrt
from quadforms.discriminant import validate_discriminant


class QuadForm:
    """
    The binary quadratic form a x^2 + b xy + c y^2.

    Attributes:
        - a, b, c: the integer coefficients
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a: int, b: int, c: int) -> None:
        self.a = a
        self.b = b
        self.c = c

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return (-a < b <= a < c) or (0 <= b <= a == c)

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b, self.c))

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, QuadForm):
            return False
        return (self.a, self.b, self.c) == (o.a, o.b, o.c)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c))

    def __repr__(self) -> str:
        return f"QuadForm({self.a}, {self.b}, {self.c})"

    def to_repr(self) -> list:
        return [self.a, self.b, self.c]

    @staticmethod
    def from_repr(raw: list) -> QuadForm:
        return QuadForm(raw[0], raw[1], raw[2])


def enumerate_reduced_forms(delta: int) -> List[QuadForm]:
    """
    The set T_delta of reduced primitive forms of discriminant delta, ordered by ascending a and then
    ascending b.

    :param delta: a negative discriminant
    :return: the reduced primitive forms
    """
    validate_discriminant(delta)
    x = -delta
    forms = []
    for a in range(1, isqrt(x // 3) + 1):
        four_a = 4 * a
        # b has the parity of delta
        b = -a + 1
        if (b - delta) % 2:
            b += 1
        while b <= a:
            numerator = b * b - delta
            if numerator % four_a == 0:
                c = numerator // four_a
                if c >= a and not (c == a and b < 0) and math.gcd(math.gcd(a, b), c) == 1:
                    forms.append(QuadForm(a, b, c))
            b += 2
    return forms


def class_number(delta: int) -> int:
    return len(enumerate_reduced_forms(delta))


class UpperHalfPoint:
    """
    An approximation of a point of the upper half plane.

    Attributes:
        - re: the real part
        - im: the imaginary part, positive
        - radius: a bound on the distance to the exact point
    """

    def __init__(self, re: mpmath.mpf, im: mpmath.mpf, radius: mpmath.mpf) -> None:
        if im <= 0:
            raise DomainError(f"Point with imaginary part [{im}] is not in the upper half plane")
        self.re = re
        self.im = im
        self.radius = radius

    @staticmethod
    def from_complex(z: complex, precision: int = 30) -> UpperHalfPoint:
        with mpmath.workdps(precision + 10):
            return UpperHalfPoint(mpmath.mpf(z.real), mpmath.mpf(z.imag), mpmath.mpf(10) ** (-precision))

    def to_mpc(self) -> mpmath.mpc:
        return mpmath.mpc(self.re, self.im)

    def __repr__(self) -> str:
        return f"UpperHalfPoint({mpmath.nstr(self.re, 15)}, {mpmath.nstr(self.im, 15)})"


def tau_of_form(form: QuadForm, delta: int, precision: int = 30) -> UpperHalfPoint:
    """
    tau(a, b, c) = (b + sqrt(delta)) / (2a), the root of the form in the upper half plane, which lies in the
    standard fundamental domain when the form is reduced.

    :param form: a form of discriminant delta
    :param delta: the discriminant
    :param precision: number of correct decimal digits
    :return: the approximation of tau
    """
    if form.discriminant != delta:
        raise DomainError(f"Form [{form}] does not have discriminant [{delta}]")
    with mpmath.workdps(precision + 10):
        two_a = 2 * form.a
        re = mpmath.mpf(form.b) / two_a
        im = mpmath.sqrt(mpmath.mpf(-delta)) / two_a
        return UpperHalfPoint(re, im, mpmath.mpf(10) ** (-precision))


def count_sqrt_classes(delta: int, a: int) -> int:
    """The number of residues b modulo a with b^2 congruent to delta modulo a."""
    if a < 1:
        raise DomainError(f"Modulus [{a}] must be positive")
    return sum(1 for b in range(a) if (b * b - delta) % a == 0)


def residue_classes(delta: int, a: int, modulus: int) -> List[int]:
    """
    Describe the solutions of b^2 = delta mod a as a union of residue classes modulo `modulus`.

    :param delta: the integer whose square roots are taken
    :param a: the modulus of the congruence
    :param modulus: a divisor of a
    :return: the sorted residues r modulo `modulus` whose whole class solves the congruence
    :raise DomainError: if modulus does not divide a, or the solutions are not a union of classes modulo `modulus`
    """
    if a < 1 or modulus < 1 or a % modulus:
        raise DomainError(f"Modulus [{modulus}] does not divide [{a}]")
    solutions = {b for b in range(a) if (b * b - delta) % a == 0}
    for b in solutions:
        for shift in range(modulus, a, modulus):
            if (b + shift) % a not in solutions:
                raise DomainError(f"Square roots of [{delta}] mod [{a}] are not a union of classes mod [{modulus}]")
    return sorted({b % modulus for b in solutions})
