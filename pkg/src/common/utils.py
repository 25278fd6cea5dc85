from __future__ import absolute_import, annotations

import hashlib
import json
import os
from fractions import Fraction
from typing import Union

from common.errors import ConfigurationError


class Utils:

    @staticmethod
    def canonical_json(raw: dict) -> str:
        return json.dumps(raw, sort_keys=True, separators=(",", ":"))

    @staticmethod
    def sha256_of(raw: dict) -> str:
        return hashlib.sha256(Utils.canonical_json(raw).encode("utf-8")).hexdigest()

    @staticmethod
    def parse_rational(value: Union[str, int, float, Fraction]) -> Fraction:
        """
        Parse a rational number written as an integer, a decimal, an exponent form such as `1e-3` or a
        fraction `p/q`. Floats are converted through their decimal representation.

        :param value: the value to parse
        :return: the exact rational
        """
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float):
            value = repr(value)
        try:
            return Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigurationError(f"Value [{value}] is not a rational number") from e

    @staticmethod
    def parse_integer(value: Union[str, int]) -> int:
        rational = Utils.parse_rational(value)
        if rational.denominator != 1:
            raise ConfigurationError(f"Value [{value}] is not an integer")
        return rational.numerator

    @staticmethod
    def env_int(name: str, default: int) -> int:
        raw = os.getenv(name)
        if raw is None or raw == "":
            return default
        return Utils.parse_integer(raw)

    @staticmethod
    def rational_to_repr(value: Fraction) -> str:
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
