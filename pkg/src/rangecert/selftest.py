from __future__ import absolute_import, annotations

import logging
import time
from fractions import Fraction

from common.errors import DomainError
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import sqrt_enclosure
from quadforms.analytic import class_number_analytic
from quadforms.corners import corner_distance_below
from quadforms.forms import QuadForm, enumerate_reduced_forms
from rangecert.certificate import Certificate, CertificateCheck


logger = logging.getLogger("singular.rangecert.selftest")

SELFTEST_X_MAX = 2000
WINDOW_EPS = (Fraction(1, 10), Fraction(1, 100))


def _in_fundamental_domain(form: QuadForm) -> bool:
    # |Re tau| = |b| / 2a and |tau|^2 = c / a
    a, b, c = form
    return -a < b <= a and c >= a and (c > a or b >= 0)


def _outside_window(form: QuadForm, x: int, eps: Fraction, root: Enclosure) -> bool:
    """Whether a form near a corner leaves a in (X^(1/2) / (3^(1/2) + 2 eps), (X / 3)^(1/2)], the b or the c window."""
    a, b, c = form
    sqrt3 = const("sqrt3")
    return not (
        3 * a * a <= x
        and a > (root / (sqrt3 + 2 * eps)).hi
        and a * (1 - 2 * eps) < abs(b) <= a
        and a <= c
        and c < (a * (1 + sqrt3 * eps + eps * eps)).lo
    )


def certify_forms_selftest(x_max: int = SELFTEST_X_MAX) -> Certificate:
    """
    Cross-check the form enumeration on -x_max <= delta <= -3: class numbers against the analytic class number
    formula, every root in the fundamental domain, the a, b, c windows of the forms within eps of a corner and the
    separation |tau - zeta| >= 3^(1/2) / (4 |delta|) from both corners when delta != -3.

    Each property contributes the number of its violations; the certificate holds when all are zero.

    :param x_max: the end of the range, at least 3
    :return: the certificate of stage "forms-selftest"
    """
    if x_max < 3:
        raise DomainError(f"Self test range needs x_max >= 3, got [{x_max}]")
    started = time.perf_counter()
    mismatches = 0
    outside_domain = 0
    outside_window = 0
    too_close = 0
    scanned = 0
    for x in range(3, x_max + 1):
        if x % 4 not in (0, 3):
            continue
        scanned += 1
        delta = -x
        forms = enumerate_reduced_forms(delta)
        if len(forms) != class_number_analytic(delta):
            mismatches += 1
            logger.warning(f"Class number of [{delta}] is [{len(forms)}] by enumeration, "
                           f"[{class_number_analytic(delta)}] by the analytic formula")
        root = sqrt_enclosure(x)
        separation = Fraction(3, 16 * x * x)
        for form in forms:
            if not _in_fundamental_domain(form):
                outside_domain += 1
            if x != 3 and corner_distance_below(form, delta, separation):
                too_close += 1
            for eps in WINDOW_EPS:
                if corner_distance_below(form, delta, eps * eps) and _outside_window(form, x, eps, root):
                    outside_window += 1
    violations = [
        ("class number mismatches", mismatches),
        ("roots outside the fundamental domain", outside_domain),
        ("corner forms outside the a, b, c windows", outside_window),
        ("roots closer than 3^(1/2) / (4 |delta|) to a corner", too_close),
    ]
    checks = [CertificateCheck(label, Enclosure.point(count), "<", 1) for label, count in violations]
    terms = [(label, Enclosure.point(count)) for label, count in violations]
    total = Enclosure.point(sum(count for _, count in violations))
    inputs = {"X max": x_max, "discriminants": scanned}
    inputs.update({f"window eps {index}": eps for index, eps in enumerate(WINDOW_EPS, start=1)})
    certificate = Certificate("forms-selftest", inputs, terms, total, Fraction(1), [], checks)
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000)
    logger.info(f"Form self test over [{scanned}] discriminants down to [-{x_max}], verified [{certificate.verified}]")
    return certificate
