from __future__ import absolute_import, annotations

from fractions import Fraction

from common.errors import DomainError
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure, sqrt_enclosure
from heightbounds.bounds import LARGE_RANGE_START, MAX_EPS_UNIT, validate_eps
from quadforms.discriminant import Discriminant


UNIT_CONSTANT = Fraction("10.66")
UNIT_CONSTANT_SLACK = Fraction("10.65")
HARD_CONSTANT = Fraction("9.79")
HARD_CONSTANT_SLACK = Fraction("9.78")
LARGE_CONSTANT = Fraction("3.77")
LARGE_CONSTANT_SLACK = Fraction("3.76")
EASY_SHIFT = Fraction("0.01")


def _absolute(delta: int) -> int:
    return Discriminant.decompose(delta).absolute


def height_upper_unit(delta: int, eps: Fraction, ceps: int, classnum: int,
                      constant: Fraction = UNIT_CONSTANT) -> Enclosure:
    """
    3 (C_eps / C) log|delta| + 3 log(1/eps) - 10.66, the upper bound on the height of a singular unit.

    :param constant: the subtracted constant, 10.65 once the 0.01 slack is spent
    """
    eps = validate_eps(eps, MAX_EPS_UNIT)
    if classnum < 1 or ceps < 0:
        raise DomainError(f"Invalid counts C = [{classnum}], C_eps = [{ceps}]")
    x = _absolute(delta)
    return 3 * Fraction(ceps, classnum) * log_enclosure(x) + 3 * log_enclosure(1 / eps) - constant


def height_upper_large(delta: int, F: int, classnum: int) -> Enclosure:
    """
    12 A / C + 3 log(A |delta|^(1/2) / C) - 3.77 with A = F log|delta|, valid for |delta| >= 10^14.
    """
    x = _absolute(delta)
    if x < LARGE_RANGE_START:
        raise DomainError(f"Bound requires |delta| >= 10^14, got [{x}]")
    if F < 1 or classnum < 1:
        raise DomainError(f"Invalid inputs F = [{F}], C = [{classnum}]")
    A = F * log_enclosure(x)
    return 12 * A / classnum + 3 * log_enclosure(A * sqrt_enclosure(x) / classnum) - LARGE_CONSTANT


def height_lower_easy(delta: int, classnum: int) -> Enclosure:
    """(pi |delta|^(1/2) - 0.01) / C, valid for |delta| >= 16."""
    x = _absolute(delta)
    if x < 16:
        raise DomainError(f"Bound requires |delta| >= 16, got [{x}]")
    if classnum < 1:
        raise DomainError(f"Invalid class number [{classnum}]")
    return (const("pi") * sqrt_enclosure(x) - EASY_SHIFT) / classnum


def height_lower_hard(delta: int, constant: Fraction = HARD_CONSTANT) -> Enclosure:
    """(3/sqrt 5) log|delta| - 9.79."""
    x = _absolute(delta)
    return 3 / const("sqrt5") * log_enclosure(x) - constant
