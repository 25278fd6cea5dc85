from __future__ import absolute_import, annotations

import csv
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, List, Optional, Tuple

import numpy as np

from common.errors import DomainError
from common.utils import Utils
from excluder.isqrt import isqrt
from quadforms.discriminant import validate_discriminant
from quadforms.forms import QuadForm


logger = logging.getLogger("singular.excluder.norms")

# e^pi > 23 and | |j| - e^(2 pi y) | <= 2079
GROWTH_BASE = 23
GROWTH_SHIFT = 2079
CORNER_CONSTANT = 42700
CORNER_CAP = Fraction(1, 250)
# the singular moduli of the discriminants whose bound is inconclusive
KNOWN_NON_UNITS = {-4: 12 ** 3, -7: -15 ** 3, -8: 20 ** 3}


def inline_forms(delta: int) -> List[QuadForm]:
    """
    The reduced primitive forms of discriminant delta from the plain (a, b) loops: 1 <= a <= (|delta| / 3)^(1/2),
    -a < b <= a, c = (b^2 - delta) / 4a, dropping c < a, a = c with b < 0, and non primitive triples.
    """
    x = -delta
    forms = []
    for a in range(1, isqrt(x // 3) + 1):
        four_a = 4 * a
        for b in range(-a + 1, a + 1):
            if (b * b + x) % four_a:
                continue
            c = (b * b + x) // four_a
            if c < a or (a == c and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append(QuadForm(a, b, c))
    return forms


class FormGrid:
    """
    The pairs 1 <= a <= (x_max / 3)^(1/2), -a < b <= a, ordered by a then b, with b^2 and 4a kept as numpy arrays
    so that the b^2 = delta mod 4a screen of one discriminant is a single vector operation.
    """

    def __init__(self, x_max: int) -> None:
        if x_max < 4:
            raise DomainError(f"FormGrid needs x_max >= 4, got [{x_max}]")
        a_max = isqrt(x_max // 3)
        self.x_max = x_max
        self.a = np.repeat(np.arange(1, a_max + 1, dtype=np.int64), 2 * np.arange(1, a_max + 1))
        self.b = np.concatenate([np.arange(-a + 1, a + 1, dtype=np.int64) for a in range(1, a_max + 1)])
        self.b_squared = self.b * self.b
        self.four_a = 4 * self.a
        # ends[a - 1] is the number of pairs with first entry at most a
        self.ends = np.cumsum(2 * np.arange(1, a_max + 1))

    def forms(self, delta: int) -> List[QuadForm]:
        """The same forms as inline_forms(delta), in the same order."""
        x = -delta
        if not 4 <= x <= self.x_max:
            raise DomainError(f"Discriminant [{delta}] is outside of the grid range [-{self.x_max}, -4]")
        end = int(self.ends[isqrt(x // 3) - 1])
        hits = np.flatnonzero((self.b_squared[:end] + x) % self.four_a[:end] == 0)
        forms = []
        for index in hits.tolist():
            a = int(self.a[index])
            b = int(self.b[index])
            c = (b * b + x) // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append(QuadForm(a, b, c))
        return forms


def form_term_lower(delta: int, form: QuadForm) -> Fraction:
    """
    A positive lower bound for |j(tau)| at the root tau of the form:

        max(23^n - 2079, 42700 min(2 / (5X), 1/250)^3),   X = |delta|, n = floor(X^(1/2) / a)

    n is exact: (a n)^2 <= X < (a (n + 1))^2.
    """
    x = -delta
    if x < 4:
        raise DomainError(f"form_term_lower needs |delta| >= 4, got [{delta}]")
    a = form.a
    n = isqrt(x // (a * a))
    assert (a * n) ** 2 <= x < (a * (n + 1)) ** 2
    corner = CORNER_CONSTANT * min(Fraction(2, 5 * x), CORNER_CAP) ** 3
    return max(Fraction(GROWTH_BASE ** n - GROWTH_SHIFT), corner)


class NormBound:
    """
    A lower bound for the absolute norm prod |j(tau_k)| of the singular moduli of one discriminant.

    Attributes:
        - delta: the discriminant
        - p_lower: the exact lower bound
        - flagged: p_lower <= 1, i.e. the bound does not rule out a unit
        - early_exit: whether the product stopped before the last form, all remaining factors being >= 1
    """

    def __init__(self, delta: int, p_lower: Fraction, early_exit: bool = False) -> None:
        self.delta = delta
        self.p_lower = p_lower
        self.early_exit = early_exit

    @property
    def flagged(self) -> bool:
        return self.p_lower <= 1

    def to_repr(self) -> dict:
        return {
            "delta": self.delta,
            "pLower": Utils.rational_to_repr(self.p_lower),
            "flagged": self.flagged,
            "earlyExit": self.early_exit,
        }

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, NormBound):
            return False
        return o.delta == self.delta and o.p_lower == self.p_lower and o.early_exit == self.early_exit

    def __repr__(self) -> str:
        return f"NormBound({self.delta}, flagged={self.flagged})"


def norm_lower_bound(delta: int, forms: Optional[List[QuadForm]] = None) -> NormBound:
    """
    Multiply form_term_lower over the forms of delta, by decreasing a. Once 9 a^2 <= |delta| every remaining
    factor is at least 23^3 - 2079 > 1, so the product stops as soon as it exceeds 1 there.

    :param forms: the reduced primitive forms of delta when already enumerated, by increasing a
    :raise DomainError: if delta > -4 or delta is not a discriminant
    """
    validate_discriminant(delta)
    if delta > -4:
        raise DomainError(f"norm_lower_bound needs delta <= -4, got [{delta}]")
    x = -delta
    product = Fraction(1)
    for form in reversed(forms if forms is not None else inline_forms(delta)):
        if product > 1 and 9 * form.a * form.a <= x:
            return NormBound(delta, product, early_exit=True)
        product *= form_term_lower(delta, form)
    return NormBound(delta, product)


class ExclusionReport:
    """
    Attributes:
        - x_max: the range is -x_max <= delta <= -4
        - flagged: the bounds with p_lower <= 1, by decreasing delta
        - scanned_count: the number of discriminants examined
        - runtime_ms: wall clock time
    """

    def __init__(self, x_max: int, flagged: List[NormBound], scanned_count: int, runtime_ms: int = 0) -> None:
        self.x_max = x_max
        self.flagged = sorted(flagged, key=lambda bound: bound.delta, reverse=True)
        self.scanned_count = scanned_count
        self.runtime_ms = runtime_ms

    @property
    def flagged_deltas(self) -> List[int]:
        return [bound.delta for bound in self.flagged]

    def only_known_non_units(self) -> bool:
        return all(delta in KNOWN_NON_UNITS for delta in self.flagged_deltas)

    def to_repr(self) -> dict:
        return {
            "xMax": self.x_max,
            "flagged": [bound.to_repr() for bound in self.flagged],
            "scannedCount": self.scanned_count,
            "runtimeMs": self.runtime_ms,
        }


def _exclude_chunk(bounds: Tuple[int, int], writer: Optional[Any] = None) -> Tuple[List[NormBound], int]:
    """Examine the discriminants -hi <= delta <= -lo, writing one CSV row each when a writer is given."""
    lo, hi = bounds
    grid = FormGrid(hi)
    flagged = []
    scanned = 0
    for x in range(lo, hi + 1):
        if x % 4 not in (0, 3):
            continue
        scanned += 1
        bound = norm_lower_bound(-x, grid.forms(-x))
        if writer is not None:
            writer.writerow([bound.delta, bound.p_lower.numerator, bound.p_lower.denominator, int(bound.flagged)])
        if bound.flagged:
            flagged.append(bound)
    return flagged, scanned


def exclude_range(x_max: int, threads: int = 1, chunk_size: int = 20000,
                  csv_path: Optional[str] = None) -> ExclusionReport:
    """
    Flag every discriminant -x_max <= delta <= -4 whose norm bound is at most 1.

    :param x_max: the end of the range, at least 4
    :param threads: the number of worker processes
    :param chunk_size: the number of |delta| values per work unit
    :param csv_path: optional `delta,p_lower_numerator,p_lower_denominator,flagged` dump of every discriminant
    :return: the report
    """
    if x_max < 4:
        raise DomainError(f"exclude_range needs x_max >= 4, got [{x_max}]")
    started = time.perf_counter()
    chunks = [(lo, min(lo + chunk_size - 1, x_max)) for lo in range(4, x_max + 1, chunk_size)]
    flagged = []  # type: List[NormBound]
    scanned = 0
    if csv_path is not None:
        with open(csv_path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["delta", "p_lower_numerator", "p_lower_denominator", "flagged"])
            for chunk in chunks:
                chunk_flagged, chunk_scanned = _exclude_chunk(chunk, writer)
                flagged.extend(chunk_flagged)
                scanned += chunk_scanned
    elif threads == 1 or len(chunks) == 1:
        for chunk_flagged, chunk_scanned in map(_exclude_chunk, chunks):
            flagged.extend(chunk_flagged)
            scanned += chunk_scanned
    else:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            for chunk_flagged, chunk_scanned in executor.map(_exclude_chunk, chunks):
                flagged.extend(chunk_flagged)
                scanned += chunk_scanned
    report = ExclusionReport(x_max, flagged, scanned, int((time.perf_counter() - started) * 1000))
    logger.info(f"Examined [{scanned}] discriminants down to [-{x_max}] in [{report.runtime_ms}] ms, "
                f"flagged {report.flagged_deltas}")
    return report
