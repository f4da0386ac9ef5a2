"""Exact multiplicative number theory on the modulus n.

Everything here works on Python ints, so there is no overflow to guard
against; floating point never enters a count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union

from .errors import DomainError


def _trial_factor(n: int) -> list[tuple[int, int]]:
    # n >= 1; returns [] for n == 1
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class Modulus:
    """A modulus n >= 2 with its ascending prime factorization."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError("modulus must be at least 2")
        prod = 1
        last = 1
        for p, k in self.factors:
            if p <= last or k < 1 or not is_prime(p):
                raise DomainError(f"bad factorization {self.factors} of {self.n}")
            prod *= p**k
            last = p
        if prod != self.n:
            raise DomainError(f"factorization {self.factors} does not multiply to {self.n}")

    @classmethod
    def of(cls, n: "int | Modulus") -> "Modulus":
        if isinstance(n, Modulus):
            return n
        return factorize(n)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    @property
    def prime_power(self) -> tuple[int, int] | None:
        """(p, k) when n = p^k, else None."""
        return self.factors[0] if len(self.factors) == 1 else None

    def __int__(self):
        return self.n

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True, order=True)
class Divisor:
    d: int
    cofactor: int

    def __post_init__(self):
        if self.d < 1 or self.cofactor < 1:
            raise DomainError(f"divisor must be positive, got {self.d}")

    @property
    def n(self) -> int:
        return self.d * self.cofactor

    def __int__(self):
        return self.d

    __index__ = __int__


IntOrModulus = Union[int, Modulus]


def factorize(n: int) -> Modulus:
    """Factor n >= 2 by trial division up to sqrt(n)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise DomainError("modulus must be at least 2")
    return Modulus(n, tuple(_trial_factor(n)))


def _factors_of(n: IntOrModulus) -> tuple[int, list[tuple[int, int]]]:
    # accepts n == 1 so that cofactors n/d can be handled uniformly
    if isinstance(n, Modulus):
        return n.n, list(n.factors)
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"expected a positive integer, got {n!r}")
    return n, _trial_factor(n)


def divisors(nn: IntOrModulus) -> list[Divisor]:
    n, fac = _factors_of(nn)
    ds = [1]
    for p, k in fac:
        ds = [d * p**e for d in ds for e in range(k + 1)]
    return [Divisor(d, n // d) for d in sorted(ds)]


def gcd_with_modulus(a: Iterable[int], nn: IntOrModulus) -> Divisor:
    """gcd(a_1, ..., a_m, n); the zero vector gets d = n.

    `a` may be a VectorModN or any iterable of ints.
    """
    n = int(nn)
    comps = getattr(a, "components", a)
    d = reduce(math.gcd, comps, n)
    return Divisor(d, n // d)


def jordan_totient(m: int, nn: IntOrModulus) -> int:
    """Jordan's totient J_m(n) = n^m prod_{p | n} (1 - p^-m), in exact integers.

    Accepts n = 1 (J_m(1) = 1) since orbit sizes need J_m(n/d) with d = n.
    """
    if m < 1:
        raise DomainError(f"order m must be >= 1, got {m}")
    _, fac = _factors_of(nn)
    out = 1
    for p, k in fac:
        out *= p ** (m * k) - p ** (m * (k - 1))
    return out


def jordan_divisor_sum(m: int, nn: IntOrModulus) -> int:
    """sum_{d | n} J_m(d); equals n^m."""
    return sum(jordan_totient(m, x.d) for x in divisors(nn))


def as_modulus(n: IntOrModulus) -> Modulus:
    return Modulus.of(n)
