"""Moebius and divisor-sum functions by trial division."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation ``{p: e}`` of a positive integer."""
    if n < 1:
        raise DomainError("factorize requires n >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def sigma_nu(nu: int, n: int) -> Fraction:
    """Exact ``sigma_nu(n) = sum_{d | n} d^nu`` (``nu`` may be negative)."""
    return sum((Fraction(d) ** nu for d in divisors(n)), Fraction(0))


@lru_cache(maxsize=64)
def _sigma_table_cached(nu: int, n_max: int) -> np.ndarray:
    out = np.zeros(n_max, dtype=float)
    for d in range(1, n_max + 1):
        out[d - 1 :: d] += float(d) ** nu
    out.flags.writeable = False
    return out


def sigma_table(nu: int, n_max: int) -> np.ndarray:
    """Float array ``[sigma_nu(1), ..., sigma_nu(n_max)]`` by a divisor sieve."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    return _sigma_table_cached(int(nu), int(n_max))
