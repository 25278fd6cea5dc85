from __future__ import absolute_import, annotations

import logging
import time
from fractions import Fraction
from typing import Callable, List, Tuple, Union

from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure, pow_enclosure
from rangecert.certificate import Certificate, CertificateCheck
from rangecert.terms import MONOTONICITY_NOTE, grid_checks, published_constant_inputs, y_link_term


logger = logging.getLogger("singular.rangecert.mid")

MID_EPS = Fraction(1, 10 ** 4)
MID_SPLIT = 2 * 10 ** 10
MID_START = 10 ** 10
MID_END = 10 ** 15
UPPER_THRESHOLD = Fraction("0.962")
LOWER_THRESHOLD = Fraction("0.960")
GRID = (10 ** 10, 2 * 10 ** 10, 5 * 10 ** 10, 10 ** 11, 10 ** 12, 10 ** 13, 10 ** 14, 5 * 10 ** 14, 10 ** 15)

Real = Union[int, Fraction]


def _first(eps: Fraction) -> Callable[[Real], Enclosure]:
    return lambda x: 3 / const("pi") * (8 * eps * eps + Fraction("0.811") * eps) * log_enclosure(x) ** 2


def _second(eps: Fraction) -> Callable[[Real], Enclosure]:
    return lambda x: 3 / const("pi") * (28 * eps * eps + Fraction("2.829") * eps) * log_enclosure(x)


def _third(eps: Fraction) -> Callable[[Real], Enclosure]:
    return lambda x: 267 / const("pi") * eps * log_enclosure(x) / pow_enclosure(x, Fraction(1, 8))


def _fourth(eps: Fraction) -> Callable[[Real], Enclosure]:
    return lambda x: Fraction("93.18") / (const("pi") * pow_enclosure(x, Fraction(1, 4)))


def _fifth(eps: Fraction) -> Callable[[Real], Enclosure]:
    return lambda x: y_link_term(eps, x)


# (label, builder, increasing); increasing terms are taken at the right end of an interval, the others at the left
MID_TERMS: List[Tuple[str, Callable[[Fraction], Callable[[Real], Enclosure]], bool]] = [
    ("3/pi (8 eps^2 + 0.811 eps) (log X)^2", _first, True),
    ("3/pi (28 eps^2 + 2.829 eps) log X", _second, True),
    ("267/pi eps log X / X^(1/8)", _third, False),
    ("93.18 / (pi X^(1/4))", _fourth, False),
    ("(3 log(1/eps) - 10.65) / ((3/sqrt 5) log X - 9.78)", _fifth, False),
]


def _certify_interval(stage: str, eps: Fraction, x_left: int, x_right: int, threshold: Fraction) -> Certificate:
    started = time.perf_counter()
    terms = []
    checks = []
    grid = [x for x in GRID if x_left <= x <= x_right]
    for label, builder, increasing in MID_TERMS:
        function = builder(eps)
        terms.append((label, function(x_right if increasing else x_left)))
        checks.extend(grid_checks(label, function, grid, decreasing=not increasing))
    total = terms[0][1]
    for _, value in terms[1:]:
        total = total + value
    checks.append(CertificateCheck("(3/sqrt 5) log X - 9.78 > 0", 3 / const("sqrt5") * log_enclosure(x_left)
                                   - Fraction("9.78"), ">", 0))
    checks.append(CertificateCheck("(log x) / x^(1/8) decreases beyond e^8 < 3000", log_enclosure(3000), ">", 8))
    inputs = {"eps": eps, "X left": x_left, "X right": x_right, **published_constant_inputs()}
    certificate = Certificate(stage, inputs, terms, total, threshold, [MONOTONICITY_NOTE], checks)
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000)
    logger.info(f"Mid range [{x_left}, {x_right}) total [{float(total.hi)}] against [{float(threshold)}], "
                f"verified [{certificate.verified}]")
    return certificate


def certify_mid_range(eps: Fraction = MID_EPS) -> Tuple[Certificate, Certificate]:
    """
    Rule out singular units with 10^10 <= |delta| < 10^15, with eps = 10^-4.

    The right side of 1 <= 3/pi (8 eps^2 + 0.811 eps)(log X)^2 + ... is evaluated on [2 10^10, 10^15) and on
    [10^10, 2 10^10); the two leading terms increase and are taken at the right endpoint, the remaining three
    decrease and are taken at the left endpoint.

    :return: the certificates of stages "mid-upper" and "mid-lower"
    """
    eps = Fraction(eps)
    upper = _certify_interval("mid-upper", eps, MID_SPLIT, MID_END, UPPER_THRESHOLD)
    lower = _certify_interval("mid-lower", eps, MID_START, MID_SPLIT, LOWER_THRESHOLD)
    return upper, lower
