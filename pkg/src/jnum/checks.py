from __future__ import absolute_import, annotations

import logging
from typing import List, Tuple

import mpmath

from jnum.jfunction import j_eval
from quadforms.forms import UpperHalfPoint


logger = logging.getLogger("singular.jnum.checks")

PRECISION = 30
NEAR_CORNER_DISTANCES = (10 ** -1, 10 ** -2, 10 ** -3, 10 ** -4, 10 ** -5)
# golden ratio based low discrepancy sequence
PHI_X = mpmath.mpf("0.7548776662466927600495088963585286918946")
PHI_Y = mpmath.mpf("0.5698402909980532659113999581195686981338")


class JBoundsReport:
    """
    The outcome of sampling the growth bounds of j over the fundamental domain:

        | |j(z)| - exp(2 pi y) | <= 2079
        |j(z)| >= 0.992 exp(2 pi y)                                      for y >= 2
        |j(z)| >= 42700 min(|z - zeta_3|, |z - zeta_6|, 4 10^-3)^3

    Attributes:
        - samples: the number of points evaluated
        - violations: (point, label) for every failed inequality
    """

    def __init__(self, samples: int, violations: List[Tuple[mpmath.mpc, str]]) -> None:
        self.samples = samples
        self.violations = violations

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_repr(self) -> dict:
        return {
            "samples": self.samples,
            "violations": [{"z": mpmath.nstr(z, 20), "label": label} for z, label in self.violations],
            "label": "oracle, non-certified",
        }


def _corners() -> Tuple[mpmath.mpc, mpmath.mpc]:
    half_root = mpmath.sqrt(3) / 2
    return mpmath.mpc(-0.5, half_root), mpmath.mpc(0.5, half_root)


def sample_points(sample_count: int) -> List[mpmath.mpc]:
    """
    Points of the standard fundamental domain: a low discrepancy grid with 0.87 <= y <= 4, points above y = 2, and
    points at distances 10^-1 ... 10^-5 from both corners.
    """
    points = []
    for k in range(1, sample_count + 1):
        x = mpmath.frac(k * PHI_X) - mpmath.mpf(1) / 2
        floor = mpmath.sqrt(1 - x * x)
        y = floor + mpmath.frac(k * PHI_Y) * (4 - floor)
        points.append(mpmath.mpc(x, y))
        if k % 4 == 0:
            points.append(mpmath.mpc(x, 2 + mpmath.frac(k * PHI_Y)))
    zeta3, zeta6 = _corners()
    for distance in NEAR_CORNER_DISTANCES:
        d = mpmath.mpf(distance)
        points.extend([zeta3 + mpmath.mpc(0, d), zeta6 + mpmath.mpc(0, d),
                       zeta3 + mpmath.mpc(d, d) / mpmath.sqrt(2), zeta6 + mpmath.mpc(-d, d) / mpmath.sqrt(2)])
    return points


def check_j_bounds(sample_count: int = 200) -> JBoundsReport:
    violations = []  # type: List[Tuple[mpmath.mpc, str]]
    zeta3, zeta6 = _corners()
    points = sample_points(sample_count)
    with mpmath.workdps(PRECISION + 20):
        for z in points:
            value = j_eval(UpperHalfPoint(z.real, z.imag, mpmath.mpf(10) ** -(PRECISION + 10)), PRECISION)
            size = abs(value)
            growth = mpmath.exp(2 * mpmath.pi * z.imag)
            if abs(size - growth) - value.err > 2079:
                violations.append((z, "||j| - exp(2 pi y)| <= 2079"))
            if z.imag >= 2 and size + value.err < mpmath.mpf("0.992") * growth:
                violations.append((z, "|j| >= 0.992 exp(2 pi y)"))
            distance = min(abs(z - zeta3), abs(z - zeta6), mpmath.mpf("0.004"))
            if size + value.err < 42700 * distance ** 3:
                violations.append((z, "|j| >= 42700 min(|z - zeta|, 0.004)^3"))
    for z, label in violations:
        logger.warning(f"j bound [{label}] fails at [{mpmath.nstr(z, 15)}]")
    return JBoundsReport(len(points), violations)
