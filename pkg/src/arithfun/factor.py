from __future__ import absolute_import, annotations

import math
from typing import List, Tuple

from common.errors import DomainError


_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % d for d in range(2, math.isqrt(p) + 1))]
# deterministic Miller-Rabin witnesses for every n < 3.3 * 10^24
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FactoredInteger:
    """
    A positive integer with its prime factorisation.

    Attributes:
        - n: the integer
        - factors: the pairs (p, e) with p prime, e >= 1, sorted by p, whose product of p^e is n
    """

    def __init__(self, n: int, factors: List[Tuple[int, int]]) -> None:
        self.n = n
        self.factors = factors

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for prime, e in self.factors:
            if prime == p:
                return e
        return 0

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, FactoredInteger):
            return False
        return self.n == o.n and self.factors == o.factors

    def __repr__(self) -> str:
        return f"FactoredInteger({self.n}, {self.factors})"

    def to_repr(self) -> dict:
        return {
            "n": self.n,
            "factors": [[p, e] for p, e in self.factors],
        }

    @staticmethod
    def from_repr(raw: dict) -> FactoredInteger:
        return FactoredInteger(raw["n"], [(p, e) for p, e in raw["factors"]])


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a witness set that is deterministic for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:13]:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a non trivial factor of the composite odd integer n."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"No factor found for [{n}]")


def _split(n: int, found: dict) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        found[n] = found.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, found)
    _split(n // d, found)


def factorize(n: int) -> FactoredInteger:
    """
    Factor a positive integer: trial division by the primes below 1000, then Pollard-Brent rho on the
    remaining cofactor.

    :param n: the positive integer to factor
    :return: the factorisation
    :raise DomainError: if n < 1
    """
    if n < 1:
        raise DomainError(f"Can not factor [{n}]")
    found = {}
    rest = n
    for p in _SMALL_PRIMES:
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            found[p] = e
    if rest > 1:
        if rest < _SMALL_PRIMES[-1] ** 2:
            found[rest] = found.get(rest, 0) + 1
        else:
            _split(rest, found)
    return FactoredInteger(n, sorted(found.items()))


def omega(n: int) -> int:
    """The number of distinct prime divisors of n; omega(1) = 0."""
    return len(factorize(n).factors)


def sigma0(n: int) -> int:
    result = 1
    for _, e in factorize(n).factors:
        result *= e + 1
    return result


def sigma1(n: int) -> int:
    result = 1
    for p, e in factorize(n).factors:
        result *= (p ** (e + 1) - 1) // (p - 1)
    return result


def gcd2(m: int, n: int) -> int:
    """
    The largest positive d such that d^2 divides both m and n.

    :raise DomainError: if m is not positive
    """
    if m < 1:
        raise DomainError(f"gcd2 needs a positive first argument, got [{m}]")
    g = math.gcd(m, n)
    result = 1
    for p, e in factorize(g).factors:
        result *= p ** (e // 2)
    return result


def kronecker(a: int, n: int) -> int:
    """
    The Kronecker symbol (a / n).
    """
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a / n) for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
