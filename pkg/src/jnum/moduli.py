from __future__ import absolute_import, annotations

import logging
import math
from typing import List

import mpmath

from jnum.jfunction import ComplexApprox, j_eval
from quadforms.discriminant import validate_discriminant
from quadforms.forms import enumerate_reduced_forms, tau_of_form


logger = logging.getLogger("singular.jnum.moduli")

ORACLE_LABEL = "oracle, non-certified"


def singular_moduli(delta: int, precision: int = 30) -> List[ComplexApprox]:
    """
    j(tau(a, b, c)) for every reduced primitive form of discriminant delta, in the order of the form enumeration.
    Each value carries `precision` digits after the point, whatever its size.
    """
    validate_discriminant(delta)
    # the largest value is about exp(pi |delta|^(1/2)), reached at a = 1
    magnitude = int(math.pi * math.sqrt(-delta) / math.log(10)) + 1
    values = []
    for form in enumerate_reduced_forms(delta):
        tau = tau_of_form(form, delta, precision + magnitude + 10)
        values.append(j_eval(tau, precision))
    return values


def symmetric_functions(values: List[ComplexApprox], precision: int = 30) -> List[ComplexApprox]:
    """
    e_1, ..., e_m of the values, read off prod (x + v_k); for a full set of conjugates they are rational integers up
    to sign, e_1 being the trace and e_m the norm.
    """
    # every e_k is at most the product of max(1, |v|)
    magnitude = sum(int(mpmath.log10(abs(value))) + 1 for value in values if abs(value) > 1)
    with mpmath.workdps(magnitude + precision + 10):
        coefficients = [ComplexApprox(1)]
        for value in values:
            shifted = [ComplexApprox(0)] + coefficients
            for k, coefficient in enumerate(coefficients):
                shifted[k] = shifted[k] + coefficient * value
            coefficients = shifted
    # coefficients[k] holds e_{m - k}
    return list(reversed(coefficients[:-1]))


def height_numeric(delta: int, precision: int = 30) -> mpmath.mpf:
    """
    The absolute logarithmic height (1 / C(delta)) sum log+ |j(tau_k)| of the singular moduli of discriminant delta,
    an algebraic integer. Numeric only.
    """
    values = singular_moduli(delta, precision)
    with mpmath.workdps(precision + 10):
        total = mpmath.mpf(0)
        for value in values:
            size = abs(value)
            if size > 1:
                total += mpmath.log(size)
        height = total / len(values)
    logger.debug(f"Numeric height of [{delta}] is [{mpmath.nstr(height, 15)}] ({ORACLE_LABEL})")
    return height
