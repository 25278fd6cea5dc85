from __future__ import absolute_import, annotations

import logging
import time
from fractions import Fraction

import mpmath

from excluder.norms import KNOWN_NON_UNITS, ExclusionReport
from interval.enclosure import Enclosure
from jnum.moduli import ORACLE_LABEL, singular_moduli
from rangecert.certificate import Certificate, CertificateCheck


logger = logging.getLogger("singular.excluder.certify")

AGREEMENT = Fraction(1, 10 ** 20)


def _to_fraction(value: mpmath.mpf) -> Fraction:
    mantissa, exponent = mpmath.mpf(value).man_exp
    return Fraction(mantissa) * Fraction(2) ** exponent


def certify_exclusion(report: ExclusionReport, precision: int = 30) -> Certificate:
    """
    The exclusion is settled when every flagged discriminant has a tabulated singular modulus, a rational integer
    and therefore not a unit. The numeric j values of the flagged discriminants are compared with the table.

    :param report: the outcome of exclude_range
    :param precision: digits of the j evaluations
    :return: the certificate of stage "exclude"
    """
    started = time.perf_counter()
    unknown = [delta for delta in report.flagged_deltas if delta not in KNOWN_NON_UNITS]
    for delta in unknown:
        logger.warning(f"Discriminant [{delta}] is flagged and has no tabulated singular modulus")
    terms = [(f"p_lower({bound.delta})", Enclosure.point(bound.p_lower)) for bound in report.flagged]
    checks = []
    with mpmath.workdps(precision + 20):
        for delta in report.flagged_deltas:
            if delta not in KNOWN_NON_UNITS:
                continue
            values = singular_moduli(delta, precision)
            expected = KNOWN_NON_UNITS[delta]
            distance = max(abs(value.value - expected) + value.err for value in values)
            checks.append(CertificateCheck(f"|j - ({expected})| for {delta}", Enclosure(0, _to_fraction(distance)),
                                           "<", AGREEMENT))
            checks.append(CertificateCheck(f"class number of {delta}", Enclosure.point(len(values)), "<=", 1))
    inputs = {"X max": report.x_max, "scanned": report.scanned_count, "flagged": len(report.flagged)}
    notes = [f"known non units: {sorted(KNOWN_NON_UNITS)}", f"j agreement: {ORACLE_LABEL}"]
    certificate = Certificate("exclude", inputs, terms, Enclosure.point(len(unknown)), Fraction(1), notes, checks)
    certificate.runtime_ms = int((time.perf_counter() - started) * 1000) + report.runtime_ms
    logger.info(f"Exclusion down to [-{report.x_max}] flags {report.flagged_deltas}, "
                f"verified [{certificate.verified}]")
    return certificate
