from __future__ import absolute_import, annotations

import os
from fractions import Fraction
from typing import Optional

from common.errors import ConfigurationError
from common.utils import Utils
from interval.functions import sqrt_enclosure


DEFAULT_BLOCK_SIZE = 1 << 26

# eps label -> (eps, a lower factor, b lower factor)
PRESETS = {
    "1e-3": (Fraction(1, 1000), Fraction(998, 1000), Fraction(998, 1000)),
    "4e-3": (Fraction(4, 1000), Fraction(993, 1000), Fraction(992, 1000)),
}


class ScanConfig:
    """
    The parameters of one C_eps scan over the discriminants -x_max <= delta <= -x_min.

    The a loop starts at floor(a_lower_factor c) and the b loop at floor(b_lower_factor a); the factors replace
    1 / (1 + sqrt(3) eps + eps^2) and 1 - 2 eps from below, so every form counted by C_eps is visited.

    Attributes:
        - x_min, x_max: the range of |delta|
        - eps_label: "1e-3", "4e-3" or "custom"
        - eps: the radius the factors are checked against
        - a_lower_factor, b_lower_factor: the exact rational loop factors
        - block_size: the number of counters per block
        - threads: the number of worker processes
    """

    def __init__(self,
                 x_min: int,
                 x_max: int,
                 eps_label: str,
                 eps: Fraction,
                 a_lower_factor: Fraction,
                 b_lower_factor: Fraction,
                 block_size: int = DEFAULT_BLOCK_SIZE,
                 threads: int = 1
                 ) -> None:
        self.x_min = x_min
        self.x_max = x_max
        self.eps_label = eps_label
        self.eps = Fraction(eps)
        self.a_lower_factor = Fraction(a_lower_factor)
        self.b_lower_factor = Fraction(b_lower_factor)
        self.block_size = block_size
        self.threads = threads
        self._validate()

    def _validate(self) -> None:
        if not 0 < self.x_min < self.x_max:
            raise ConfigurationError(f"Scan range needs 0 < x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.block_size < 1 or self.threads < 1:
            raise ConfigurationError(f"Block size [{self.block_size}] and threads [{self.threads}] must be positive")
        if not 0 < self.eps <= Fraction(1, 3):
            raise ConfigurationError(f"eps must lie in (0, 1/3], got [{self.eps}]")
        if not 0 < self.b_lower_factor <= 1 - 2 * self.eps:
            raise ConfigurationError(f"b factor [{self.b_lower_factor}] exceeds 1 - 2 eps for eps [{self.eps}]")
        widening = 1 + sqrt_enclosure(3) * self.eps + self.eps * self.eps
        if not 0 < self.a_lower_factor or (self.a_lower_factor * widening).hi > 1:
            raise ConfigurationError(
                f"a factor [{self.a_lower_factor}] exceeds 1 / (1 + sqrt(3) eps + eps^2) for eps [{self.eps}]")

    @staticmethod
    def build(x_min: int, x_max: int, eps_label: str, eps: Optional[Fraction] = None,
              a_lower_factor: Optional[Fraction] = None, b_lower_factor: Optional[Fraction] = None,
              block_size: Optional[int] = None, threads: Optional[int] = None) -> ScanConfig:
        """
        Build a config from a preset label, or from explicit factors when the label is "custom". Block size and
        threads default to SINGULAR_BLOCK_SIZE and SINGULAR_THREADS.
        """
        if eps_label in PRESETS:
            eps, a_lower_factor, b_lower_factor = PRESETS[eps_label]
        elif eps is None or a_lower_factor is None or b_lower_factor is None:
            raise ConfigurationError(f"Unknown eps preset [{eps_label}] and no explicit factors given")
        if block_size is None:
            block_size = Utils.env_int("SINGULAR_BLOCK_SIZE", DEFAULT_BLOCK_SIZE)
        if threads is None:
            threads = Utils.env_int("SINGULAR_THREADS", os.cpu_count() or 1)
        return ScanConfig(x_min, x_max, eps_label, eps, a_lower_factor, b_lower_factor, block_size, threads)

    def same_scan(self, other: ScanConfig) -> bool:
        """Whether both configs describe the same counting, block size and threads aside."""
        return (self.x_min, self.x_max, self.eps, self.a_lower_factor, self.b_lower_factor) == \
            (other.x_min, other.x_max, other.eps, other.a_lower_factor, other.b_lower_factor)

    def to_repr(self) -> dict:
        return {
            "xMin": self.x_min,
            "xMax": self.x_max,
            "epsLabel": self.eps_label,
            "eps": Utils.rational_to_repr(self.eps),
            "aLowerFactor": Utils.rational_to_repr(self.a_lower_factor),
            "bLowerFactor": Utils.rational_to_repr(self.b_lower_factor),
            "blockSize": self.block_size,
            "threads": self.threads,
        }

    @staticmethod
    def from_repr(raw: dict) -> ScanConfig:
        return ScanConfig(
            raw["xMin"],
            raw["xMax"],
            raw["epsLabel"],
            Utils.parse_rational(raw["eps"]),
            Utils.parse_rational(raw["aLowerFactor"]),
            Utils.parse_rational(raw["bLowerFactor"]),
            raw["blockSize"],
            raw["threads"]
        )

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, ScanConfig):
            return False
        return o.to_repr() == self.to_repr()

    def __repr__(self) -> str:
        return f"ScanConfig([{self.x_min}, {self.x_max}], eps={self.eps_label})"
