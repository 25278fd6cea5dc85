from __future__ import absolute_import, annotations

import logging
import time
from fractions import Fraction
from typing import Tuple, Union

from common.errors import DomainError
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure, sqrt_enclosure
from rangecert.certificate import Certificate, CertificateCheck
from rangecert.terms import MONOTONICITY_NOTE, grid_checks, published_constant_inputs, y_link_term


logger = logging.getLogger("singular.rangecert.low")

HIGH_PAIR = (Fraction(1, 1000), 10 ** 7, 10 ** 10, Fraction("0.929"))
LOW_PAIR = (Fraction(4, 1000), 3 * 10 ** 5, 10 ** 7, Fraction("0.961"))


def _log_over_root(x: Union[int, Fraction]) -> Enclosure:
    return log_enclosure(x) / sqrt_enclosure(x)


def _certify(stage: str, cap: int, eps: Fraction, x_left: int, x_right: int, threshold: Fraction) -> Certificate:
    started = time.perf_counter()
    terms = [
        (f"(3 {cap} / pi) log X / X^(1/2)", 3 * cap / const("pi") * _log_over_root(x_left)),
        ("(3 log(1/eps) - 10.65) / ((3/sqrt 5) log X - 9.78)", y_link_term(eps, x_left)),
    ]
    total = terms[0][1] + terms[1][1]
    grid = [x_left, 3 * x_left, 10 * x_left, x_right]
    checks = [
        CertificateCheck("log X - 2 > 0 so (log x) / x^(1/2) decreases", log_enclosure(x_left) - 2, ">", 0),
        CertificateCheck("3 log(1/eps) - 10.65 > 0", 3 * log_enclosure(1 / eps) - Fraction("10.65"), ">", 0),
    ]
    checks.extend(grid_checks("(log x) / x^(1/2)", _log_over_root, grid, decreasing=True))
    checks.extend(grid_checks("Y link", lambda x: y_link_term(eps, x), grid, decreasing=True))
    inputs = {"eps": eps, "C_eps cap": cap, "X left": x_left, "X right": x_right, **published_constant_inputs()}
    certificate = Certificate(stage, inputs, terms, total, threshold, [MONOTONICITY_NOTE], checks)
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000)
    logger.info(f"Low range [{x_left}, {x_right}) with cap [{cap}] total [{float(total.hi)}] against "
                f"[{float(threshold)}], verified [{certificate.verified}]")
    return certificate


def certify_low_range(ceps_cap_high: int, ceps_cap_low: int) -> Tuple[Certificate, Certificate]:
    """
    Rule out singular units with 3 10^5 <= |delta| < 10^10, given the scanned caps on C_eps.

    On [10^7, 10^10) with eps = 10^-3 the cap is expected to be 16, on [3 10^5, 10^7) with eps = 4 10^-3 it is 6.
    Both terms of (3 cap / pi) log X / X^(1/2) + (3 log(1/eps) - 10.65) / ((3/sqrt 5) log X - 9.78) decrease, so
    they are evaluated at the left endpoint.

    :return: the certificates of stages "low-upper" and "low-lower"
    """
    if ceps_cap_high < 0 or ceps_cap_low < 0:
        raise DomainError(f"Caps must be non negative, got [{ceps_cap_high}] and [{ceps_cap_low}]")
    eps, x_left, x_right, threshold = HIGH_PAIR
    upper = _certify("low-upper", ceps_cap_high, eps, x_left, x_right, threshold)
    eps, x_left, x_right, threshold = LOW_PAIR
    lower = _certify("low-lower", ceps_cap_low, eps, x_left, x_right, threshold)
    return upper, lower
