from __future__ import absolute_import, annotations

from fractions import Fraction
from typing import Callable, List, Sequence, Union

from heightbounds.heights import HARD_CONSTANT_SLACK, UNIT_CONSTANT_SLACK
from interval.constants import const
from interval.enclosure import Enclosure
from interval.functions import log_enclosure
from rangecert.certificate import CertificateCheck


MONOTONICITY_NOTE = "monotonicity: asserted, grid-corroborated"
PUBLISHED_CONSTANTS = ("10.66", "10.65", "9.79", "9.78", "3.77", "3.76")


def hard_lower(x: Union[int, Fraction]) -> Enclosure:
    """(3/sqrt 5) log X - 9.78, the height lower bound once the 0.01 slack is spent."""
    return 3 / const("sqrt5") * log_enclosure(x) - HARD_CONSTANT_SLACK


def y_link_term(eps: Fraction, x: Union[int, Fraction]) -> Enclosure:
    """
    (3 log(1/eps) - 10.65) / ((3/sqrt 5) log X - 9.78).

    Y = max(pi X^(1/2) / C, (3/sqrt 5) log X - 9.78) is below 3 (C_eps / C) log X + 3 log(1/eps) - 10.65 for a
    singular unit; dividing by Y and bounding Y from below by its second branch leaves this term.
    """
    return (3 * log_enclosure(1 / Fraction(eps)) - UNIT_CONSTANT_SLACK) / hard_lower(x)


def grid_checks(label: str, function: Callable[[Union[int, Fraction]], Enclosure], points: Sequence[int],
                decreasing: bool) -> List[CertificateCheck]:
    """
    Sample `function` on increasing `points` and state that consecutive values move in the claimed direction.
    This corroborates a monotonicity claim, it does not prove it.
    """
    values = [function(x) for x in points]
    checks = []
    for left, right, x_left, x_right in zip(values, values[1:], points, points[1:]):
        step = right - left if decreasing else left - right
        checks.append(CertificateCheck(f"{label} grid [{x_left}, {x_right}]", step, "<=", Fraction(0)))
    return checks


def published_constant_inputs() -> dict:
    return {f"constant {value}": Fraction(value) for value in PUBLISHED_CONSTANTS}
