from __future__ import absolute_import, annotations

import logging
import time
from fractions import Fraction
from typing import List, Tuple

from arithfun.robin import ROBIN_C1_BOUND, ROBIN_PRIME_BOUND, ROBIN_PRIME_COUNT, robin_c1, robin_g
from arithfun.sieve import primorial_omega_max
from heightbounds.faltings import HARD_BOUND_CONSTANT, hard_bound_constant
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure, pow_enclosure
from rangecert.certificate import Certificate, CertificateCheck


logger = logging.getLogger("singular.rangecert.constants")


def certify_robin_constant() -> Certificate:
    """c1 = log log N1 - log N1 / 189 for the product N1 of the primes up to 1129 stays below 1.1713142."""
    started = time.perf_counter()
    c1 = robin_c1()
    inputs = {"prime bound": ROBIN_PRIME_BOUND, "prime count": ROBIN_PRIME_COUNT}
    certificate = Certificate("robin", inputs, [("c1", c1)], c1, ROBIN_C1_BOUND)
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000)
    logger.info(f"Robin constant [{float(c1.hi)}] against [{ROBIN_C1_BOUND}], verified [{certificate.verified}]")
    return certificate


def _strict_margins() -> List[Tuple[str, Enclosure]]:
    """Every entry is value - claimed bound, oriented so that the claim holds when the margin is negative."""
    lambda0 = const("lambda0")
    lambda1 = const("lambda1")
    pi = const("pi")
    sqrt5 = const("sqrt5")
    quarter3 = pow_enclosure(3, Fraction(1, 4))
    sigma_ratio = Fraction(3472, 715)
    linear = 2 * lambda0 + 2 * lambda1 - lambda0 * log_enclosure(3)
    log_1e7 = log_enclosure(10 ** 7)
    loglog_1e7 = log_enclosure(log_1e7)
    log_1e14 = log_enclosure(10 ** 14)
    log_1e15 = log_enclosure(10 ** 15)
    return [
        ("10.66 <= log 42700", Fraction("10.66") - log_enclosure(42700)),
        ("log 0.992 >= -0.01", Fraction("-0.01") - log_enclosure(Fraction("0.992"))),
        ("12 (gamma + log(2 pi)/2 + (1/(2 sqrt 5) - 1/6) log 2 - 0.72) <= 9.79",
         hard_bound_constant() - HARD_BOUND_CONSTANT),
        ("3 9.83 0.27^2 0.34 / 18.54 + 3 3.605 0.27 - 3 log 0.27 - 10.66 <= -3.77",
         3 * Fraction("9.83") * Fraction("0.27") ** 2 * Fraction("0.34") / Fraction("18.54")
         + 3 * Fraction("3.605") * Fraction("0.27") - 3 * log_enclosure(Fraction("0.27")) - Fraction("10.66")
         + Fraction("3.77")),
        ("0.27 pi^(-1) (2 + log 10^14) / (256 log 10^14) < 4 10^-4",
         Fraction("0.27") / pi * (2 + log_1e14) / (256 * log_1e14) - Fraction(4, 10 ** 4)),
        ("(1.538 / 2) log 2 / log log 10^7 < 0.192",
         Fraction("1.538") / 2 * const("log2") / loglog_1e7 - Fraction("0.192")),
        ("log 8 - (1/4) log 3 - 0.812 log 10 <= log 0.938",
         log_enclosure(8) - log_enclosure(3) / 4 - Fraction("0.812") * log_enclosure(10)
         - log_enclosure(Fraction("0.938"))),
        ("0.34 <= 0.99995 log 2 / (2 1.017)",
         Fraction("0.34") - Fraction("0.99995") * const("log2") / (2 * Fraction("1.017"))),
        ("2.92 <= 0.68 log 10^7 / log log 10^7 - log log log 10^7",
         Fraction("2.92") - (Fraction("0.68") * log_1e7 / loglog_1e7 - log_enclosure(loglog_1e7))),
        ("log 18.54 <= 2.92", log_enclosure(Fraction("18.54")) - Fraction("2.92")),
        ("g(6500) > 8", 8 - robin_g(6500)),
        ("(8/3)(3472/715) lambda0 <= 8", Fraction(8, 3) * sigma_ratio * lambda0 - 8),
        ("(8/3)(3472/715)(2 lambda0 + 2 lambda1 - lambda0 log 3) <= 28",
         Fraction(8, 3) * sigma_ratio * linear - 28),
        ("8 1.722 8.5 / 3^(1/4) <= 89", 8 * Fraction("1.722") * Fraction("8.5") / quarter3 - 89),
        ("(4/3) lambda0 <= 0.811", Fraction(4, 3) * lambda0 - Fraction("0.811")),
        ("(4/3)(2 lambda0 + 2 lambda1 - lambda0 log 3) <= 2.829", Fraction(4, 3) * linear - Fraction("2.829")),
        ("8 4.865 / 3^(1/4) log 10^10 / log(10^10 / 3) <= 31.06",
         8 * Fraction("4.865") / quarter3 * log_enclosure(10 ** 10) / log_enclosure(Fraction(10 ** 10, 3))
         - Fraction("31.06")),
        ("A >= log 10^15 > 30", 30 - log_1e15),
        ("log(pi^(-1) ((3/sqrt 5) log 10^15 - 9.78)) >= 1",
         1 - log_enclosure((3 / sqrt5 * log_1e15 - Fraction("9.78")) / pi)),
    ]


def _exact_checks() -> List[CertificateCheck]:
    """Claims that hold with equality or are decided on integers."""
    def exact(label: str, value: Fraction, relation: str, bound: Fraction) -> CertificateCheck:
        return CertificateCheck(label, Enclosure.point(value), relation, bound)

    return [
        exact("0.712 + 1.010 <= 1.722", Fraction("0.712") + Fraction("1.010"), "<=", Fraction("1.722")),
        exact("2.598 + 2.267 <= 4.865", Fraction("2.598") + Fraction("2.267"), "<=", Fraction("4.865")),
        exact("14 0.058 >= 0.812", 14 * Fraction("0.058"), ">=", Fraction("0.812")),
        exact("0.192 + 1/4 <= 0.442", Fraction("0.192") + Fraction(1, 4), "<=", Fraction("0.442")),
        exact("8/3 + 0.938 <= 3.605", Fraction(8, 3) + Fraction("0.938"), "<=", Fraction("3.605")),
        exact("(16/3) 1.842 <= 9.83", Fraction(16, 3) * Fraction("1.842"), "<=", Fraction("9.83")),
        exact("omega(a) <= 5 for a <= 6500", Fraction(primorial_omega_max(6500)), "<=", 5),
        exact("F >= 2^8 = 256 for |delta| >= 10^14", Fraction(1 << primorial_omega_max(10 ** 7)), ">=", 256),
        exact("B^2 = 10^15 / 3 <= (2 10^7)^2", Fraction(10 ** 15, 3), "<=", (2 * 10 ** 7) ** 2),
    ] + [
        CertificateCheck("A = 10^5 / (sqrt 3 + 2/3) >= 4 10^4",
                         10 ** 5 / (const("sqrt3") + Fraction(2, 3)), ">=", 4 * 10 ** 4),
    ]


def certify_derived_constants() -> Certificate:
    """
    Recompute the numeric constants derived by hand along the proof. Every strict claim becomes a term holding
    its margin, the total is the largest margin and has to stay below 0.

    :return: the certificate of stage "constants"
    """
    started = time.perf_counter()
    terms = _strict_margins()
    total = terms[0][1]
    for _, margin in terms[1:]:
        total = total.maximum(margin)
    certificate = Certificate("constants", {}, terms, total, Fraction(0), checks=_exact_checks())
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000)
    worst = max(terms, key=lambda term: term[1].hi)
    logger.info(f"Derived constants verified [{certificate.verified}], smallest slack in [{worst[0]}]")
    return certificate
