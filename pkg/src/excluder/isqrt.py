from __future__ import absolute_import, annotations

from common.errors import DomainError


def isqrt(n: int) -> int:
    """
    Exact integer square root by Newton iteration on integers.

    :param n: a non negative integer
    :return: the largest r with r * r <= n
    """
    if n < 0:
        raise DomainError(f"Square root of negative integer [{n}]")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            break
        x = y
    assert x * x <= n < (x + 1) * (x + 1)
    return x
