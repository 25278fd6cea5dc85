from __future__ import absolute_import, annotations

from fractions import Fraction

from arithfun.factor import factorize, kronecker
from quadforms.discriminant import Discriminant


def _units(D: int) -> int:
    return {-3: 6, -4: 4}.get(D, 2)


def class_number_analytic(delta: int) -> int:
    """
    Class number from Dirichlet's formula h(D) = -(w / 2|D|) sum_{n < |D|} (D/n) n for the field, lifted to the
    order of conductor f by h(D f^2) = h(D) f prod_{p | f} (1 - (D/p)/p) / [O_D^* : O^*].
    """
    discriminant = Discriminant.decompose(delta)
    D = discriminant.D
    w = _units(D)
    character_sum = sum(kronecker(D, n) * n for n in range(1, -D))
    field_class_number = Fraction(-w * character_sum, 2 * -D)
    if discriminant.f == 1:
        result = field_class_number
    else:
        result = field_class_number * discriminant.f
        for p in factorize(discriminant.f).primes:
            result *= 1 - Fraction(kronecker(D, p), p)
        result /= w // 2
    assert result.denominator == 1
    return result.numerator
