from __future__ import absolute_import, annotations

from fractions import Fraction

from common.errors import DomainError
from quadforms.forms import QuadForm, enumerate_reduced_forms


def _below(form: QuadForm, x: int, shift: int, bound_squared: Fraction) -> bool:
    """
    Decide |tau - zeta|^2 < bound_squared exactly for the corner zeta = (shift + sqrt(-3)) / 2, shift = +1 or -1.

    With tau = (b + i sqrt(X)) / (2a) the squared distance is R - sqrt(3X) / (2a) where
    R = ((b - shift a)^2 + X) / (4a^2) + 3/4 is rational, so the test is L < sqrt(3X) / (2a) with
    L = R - bound_squared, settled by the sign of L and one squaring.
    """
    a, b = form.a, form.b
    four_a_squared = 4 * a * a
    rest = Fraction((b - shift * a) ** 2 + x, four_a_squared) + Fraction(3, 4) - bound_squared
    if rest < 0:
        return True
    return rest * rest < Fraction(3 * x, four_a_squared)


def corner_distance_below(form: QuadForm, delta: int, bound_squared: Fraction) -> bool:
    """
    Whether min(|tau - zeta_3|, |tau - zeta_6|) < sqrt(bound_squared) for the root tau of the form.
    """
    x = -delta
    return _below(form, x, 1, bound_squared) or _below(form, x, -1, bound_squared)


def count_ceps_exact(delta: int, eps: Fraction) -> int:
    """
    C_eps(delta): the number of reduced forms whose root lies at distance strictly less than eps from
    zeta_3 or zeta_6, decided in exact rational arithmetic.

    :param delta: the discriminant
    :param eps: the radius, 0 < eps <= 1/3
    :return: the count
    """
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 3):
        raise DomainError(f"Radius [{eps}] must lie in (0, 1/3]")
    bound_squared = eps * eps
    return sum(1 for form in enumerate_reduced_forms(delta) if corner_distance_below(form, delta, bound_squared))
