from __future__ import absolute_import, annotations

import logging
from fractions import Fraction
from typing import Optional

from arithfun.factor import sigma0, sigma1
from arithfun.sieve import pow2_omega_max
from common.errors import DomainError
from common.utils import Utils
from excluder.isqrt import isqrt
from interval.enclosure import Enclosure
from interval.functions import log_enclosure, pow_enclosure, sqrt_enclosure
from quadforms.corners import count_ceps_exact
from quadforms.discriminant import Discriminant
from quadforms.forms import class_number


logger = logging.getLogger("singular.heightbounds.bounds")

MAX_EPS = Fraction(1, 3)
MAX_EPS_UNIT = Fraction(4, 1000)
LARGE_RANGE_START = 10 ** 14
MID_RANGE_START = 10 ** 10
MID_RANGE_END = 10 ** 15


def validate_eps(eps: Fraction, bound: Fraction = MAX_EPS) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps <= bound:
        raise DomainError(f"Radius [{eps}] must lie in (0, {bound}]")
    return eps


class BoundInputs:
    """
    The quantities every bound is evaluated on.

    Attributes:
        - delta: the decomposed discriminant
        - eps: the radius around the corners
        - F: the maximum of 2^omega(a) over a <= |delta|^(1/2)
        - classnum: the class number C(delta)
        - ceps: the number C_eps(delta) of forms with root eps-close to a corner
    """

    def __init__(self, delta: Discriminant, eps: Fraction, F: int, classnum: int, ceps: int) -> None:
        validate_eps(eps)
        if F < 1 or classnum < 1 or ceps < 0:
            raise DomainError(f"Invalid bound inputs F = [{F}], C = [{classnum}], C_eps = [{ceps}]")
        self.delta = delta
        self.eps = Fraction(eps)
        self.F = F
        self.classnum = classnum
        self.ceps = ceps

    @property
    def A(self) -> Enclosure:
        """A = F log|delta|."""
        return self.F * log_enclosure(self.delta.absolute)

    def is_unit_context(self) -> bool:
        return self.eps <= MAX_EPS_UNIT

    @staticmethod
    def build(delta: int, eps: Fraction) -> BoundInputs:
        """Compute F, the class number and C_eps exactly; only sensible for small |delta|."""
        discriminant = Discriminant.decompose(delta)
        return BoundInputs(
            discriminant,
            Fraction(eps),
            pow2_omega_max(isqrt(-delta)),
            class_number(delta),
            count_ceps_exact(delta, eps)
        )

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, BoundInputs):
            return False
        return self.delta == o.delta and self.eps == o.eps and self.F == o.F and self.classnum == o.classnum \
            and self.ceps == o.ceps

    def to_repr(self) -> dict:
        return {
            "delta": self.delta.to_repr(),
            "eps": Utils.rational_to_repr(self.eps),
            "F": self.F,
            "classNumber": self.classnum,
            "cEps": self.ceps,
        }

    @staticmethod
    def from_repr(raw: dict) -> BoundInputs:
        return BoundInputs(
            Discriminant.from_repr(raw["delta"]),
            Utils.parse_rational(raw["eps"]),
            raw["F"],
            raw["classNumber"],
            raw["cEps"]
        )


def _absolute(delta: int) -> int:
    Discriminant.decompose(delta)
    return -delta


def _loglog_sqrt(x: int) -> Enclosure:
    """log log |delta|^(1/2) = log(log|delta| / 2)."""
    return log_enclosure(log_enclosure(x) / 2)


def ceps_bound_general(delta: int, eps: Fraction, F: Optional[int] = None) -> Enclosure:
    """
    F ((16/3)(sigma1(f~)/f~)|delta|^(1/2) eps^2 + (8/3)|delta|^(1/2) eps + 8 |delta/3|^(1/4) sigma0(f~) eps + 4).

    :param delta: the discriminant
    :param eps: the radius, 0 < eps <= 1/3
    :param F: the maximum of 2^omega(a) over a <= |delta|^(1/2), computed from the sieve when omitted
    :return: an upper enclosure of C_eps(delta)
    """
    eps = validate_eps(eps)
    discriminant = Discriminant.decompose(delta)
    x = discriminant.absolute
    if F is None:
        F = pow2_omega_max(isqrt(x))
    f_tilde = discriminant.f_tilde
    root = sqrt_enclosure(x)
    quarter = pow_enclosure(Fraction(x, 3), Fraction(1, 4))
    inner = Fraction(16, 3) * Fraction(sigma1(f_tilde), f_tilde) * root * eps * eps \
        + Fraction(8, 3) * root * eps \
        + 8 * quarter * sigma0(f_tilde) * eps \
        + 4
    return F * inner


def ceps_bound_large(delta: int, eps: Fraction, F: Optional[int] = None) -> Enclosure:
    """
    F (9.83 |delta|^(1/2) eps^2 log log |delta|^(1/2) + 3.605 |delta|^(1/2) eps + 4), valid for |delta| >= 10^14.
    """
    eps = validate_eps(eps)
    x = _absolute(delta)
    if x < LARGE_RANGE_START:
        raise DomainError(f"Bound requires |delta| >= 10^14, got [{x}]")
    if F is None:
        F = pow2_omega_max(isqrt(x))
    root = sqrt_enclosure(x)
    inner = Fraction("9.83") * root * eps * eps * _loglog_sqrt(x) + Fraction("3.605") * root * eps + 4
    return F * inner


def ceps_bound_midrange(delta: int, eps: Fraction) -> Enclosure:
    """
    (8 eps^2 + 0.811 eps) |delta|^(1/2) log|delta| + (28 eps^2 + 2.829 eps) |delta|^(1/2)
    + 89 eps |delta|^(3/8) + 31.06 |delta|^(1/4) / log|delta|, valid for 10^10 <= |delta| < 10^15.
    """
    eps = validate_eps(eps)
    x = _absolute(delta)
    if not MID_RANGE_START <= x < MID_RANGE_END:
        raise DomainError(f"Bound requires 10^10 <= |delta| < 10^15, got [{x}]")
    root = sqrt_enclosure(x)
    log_x = log_enclosure(x)
    return (8 * eps * eps + Fraction("0.811") * eps) * root * log_x \
        + (28 * eps * eps + Fraction("2.829") * eps) * root \
        + 89 * eps * pow_enclosure(x, Fraction(3, 8)) \
        + Fraction("31.06") * pow_enclosure(x, Fraction(1, 4)) / log_x


def divisor_growth_holds(delta: int) -> bool:
    """
    sigma0(f~) <= |delta|^0.192, decided as sigma0^125 <= |delta|^24, and
    sigma1(f~)/f~ <= 1.842 log log |delta|^(1/2); for f~ <= 120 also sigma1(f~)/f~ <= 3.
    """
    discriminant = Discriminant.decompose(delta)
    x = discriminant.absolute
    if x < LARGE_RANGE_START:
        raise DomainError(f"Divisor growth bounds require |delta| >= 10^14, got [{x}]")
    f_tilde = discriminant.f_tilde
    d0 = sigma0(f_tilde)
    if d0 ** 125 > x ** 24:
        logger.debug(f"sigma0 growth fails for delta [{delta}]")
        return False
    ratio = Fraction(sigma1(f_tilde), f_tilde)
    if f_tilde <= 120 and ratio > 3:
        return False
    return (Fraction("1.842") * _loglog_sqrt(x)).lo >= ratio


def f_lower_bound_holds(x: int) -> bool:
    """F = max 2^omega(a) over a <= X^(1/2) is at least 18.54 log log X^(1/2), for X >= 10^14."""
    if x < LARGE_RANGE_START:
        raise DomainError(f"F lower bound requires X >= 10^14, got [{x}]")
    F = pow2_omega_max(isqrt(x))
    return (Fraction("18.54") * _loglog_sqrt(x)).hi <= F
