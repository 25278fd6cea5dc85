from __future__ import absolute_import, annotations

import logging
import math
import time
from fractions import Fraction
from typing import Optional, Union

from arithfun.robin import robin_c1
from heightbounds.heights import LARGE_CONSTANT_SLACK
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure
from rangecert.certificate import Certificate, CertificateCheck
from rangecert.terms import MONOTONICITY_NOTE, grid_checks, hard_lower, published_constant_inputs


logger = logging.getLogger("singular.rangecert.high")

HIGH_RANGE_START = 10 ** 15
GRID_EXPONENTS = (15, 17, 18, 20, 22, 23, 25, 27, 28, 30)

DEFAULT_BOUNDS = {
    "u0": Fraction("-0.1908"),
    "ax": Fraction("0.0014"),
    "u1u2": Fraction("0.7734"),
    "u3": Fraction("0.0672"),
    "total": Fraction("0.981"),
}

Real = Union[int, Fraction]


def _robin_denominator(log_x: Enclosure) -> Enclosure:
    """log log x - c1 - log 2."""
    return log_enclosure(log_x) - robin_c1() - const("log2")


def u0(x: Real) -> Enclosure:
    """(log 2 / 2) / (log log x - c1 - log 2) + log log x / log x - 1/2, an upper bound of log(A X^(-1/2)) / log X."""
    log_x = log_enclosure(x)
    return const("log2") / 2 / _robin_denominator(log_x) + log_enclosure(log_x) / log_x - Fraction(1, 2)


def u1(x: Real) -> Enclosure:
    """(3 log 2 / 2) / (log log x - c1 - log 2) + (3 log log x - 3.76) / log x."""
    log_x = log_enclosure(x)
    return 3 * const("log2") / 2 / _robin_denominator(log_x) \
        + (3 * log_enclosure(log_x) - LARGE_CONSTANT_SLACK) / log_x


def u2(x: Real) -> Enclosure:
    """(3/sqrt 5 - 9.78 / log x)^(-1)."""
    return log_enclosure(x) / hard_lower(x)


def u3(x: Real) -> Enclosure:
    """log(y / pi) / y with y = (3/sqrt 5) log x - 9.78."""
    y = hard_lower(x)
    return log_enclosure(y / const("pi")) / y


def power_ceiling(exponent: Enclosure) -> Fraction:
    """
    A twelve decimal B above exp(exponent.hi), estimated in float64. The certificate only relies on B through the
    check exponent < log B.
    """
    estimate = math.exp(float(exponent.hi)) * (1 + 1e-9)
    return Fraction(math.ceil(estimate * 10 ** 12), 10 ** 12)


def certify_high_range(bounds: Optional[dict] = None) -> Certificate:
    """
    Rule out singular units with |delta| >= 10^15.

    Such a unit forces 12/pi A X^(-1/2) + (3 log A - 3.76) / ((3/sqrt 5) log X - 9.78) + 3 log(Y/pi) / Y >= 1.
    The three terms are bounded through u0, u1 u2 and u3, which decrease for X >= 10^15, so they are evaluated at
    10^15 and their monotonicity is sampled on a grid up to 10^30.

    :param bounds: overrides of the term bounds u0, ax, u1u2, u3 and of the total threshold
    :return: the certificate of stage "high"
    """
    started = time.perf_counter()
    bounds = {**DEFAULT_BOUNDS, **(bounds or {})}
    x = HIGH_RANGE_START
    log_x = log_enclosure(x)
    value_u0 = u0(x)
    # log(A X^(-1/2)) <= u0 log X < log ax
    log_ax = value_u0 * log_x
    ax = power_ceiling(log_ax)
    value_u1u2 = u1(x) * u2(x)
    value_u3 = u3(x)
    terms = [
        ("12/pi A X^(-1/2)", 12 / const("pi") * ax),
        ("u1 u2", value_u1u2),
        ("3 u3", 3 * value_u3),
    ]
    total = terms[0][1] + terms[1][1] + terms[2][1]
    y_low = hard_lower(x) / const("pi")
    checks = [
        CertificateCheck("u0(10^15) < -0.1908", value_u0, "<", bounds["u0"]),
        CertificateCheck("u0(10^15) log 10^15 < log B", log_ax - log_enclosure(ax), "<", 0),
        CertificateCheck("A X^(-1/2) <= B < 0.0014", Enclosure.point(ax), "<", bounds["ax"]),
        CertificateCheck("u1(10^15) u2(10^15) < 0.7734", value_u1u2, "<", bounds["u1u2"]),
        CertificateCheck("u3(10^15) < 0.0672", value_u3, "<", bounds["u3"]),
        CertificateCheck("3 log A - 3.76 > 0 as A >= log 10^15",
                         3 * log_enclosure(log_x) - LARGE_CONSTANT_SLACK, ">", 0),
        CertificateCheck("log(pi^(-1) ((3/sqrt 5) log 10^15 - 9.78)) >= 1", log_enclosure(y_low), ">=", 1),
        CertificateCheck("log log 10^15 - c1 - log 2 > 0", _robin_denominator(log_x), ">", 0),
    ]
    points = [10 ** k for k in GRID_EXPONENTS]
    for label, function in [("u0", u0), ("u1", u1), ("u2", u2), ("u3", u3)]:
        checks.extend(grid_checks(label, function, points, decreasing=True))
    inputs = {"X": x, **published_constant_inputs()}
    notes = [
        MONOTONICITY_NOTE,
        "Y is replaced by (3/sqrt 5) log X - 9.78 in the middle term, by pi X^(1/2) / C in the first term and "
        "X^(1/2) / C by Y / pi in the last term",
    ]
    certificate = Certificate("high", inputs, terms, total, bounds["total"], notes, checks)
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000)
    logger.info(f"High range total [{float(total.hi)}] against [{float(bounds['total'])}], "
                f"verified [{certificate.verified}]")
    return certificate
