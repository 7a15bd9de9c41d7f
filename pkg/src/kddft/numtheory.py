"""Exact integer arithmetic: factorization, divisor functions and the gcd-sum.

Everything here works on plain Python ints. Inputs must lie in ``[1, 2**31)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt, prod

MAX_INPUT = 2**31


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``d = prod(p**a for p, a in factors)``, primes increasing."""

    d: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)


def _check(d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, int):
        raise TypeError(f"expected a positive integer, got {d!r}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if d >= MAX_INPUT:
        raise ValueError(f"d must be < 2**31, got {d}")
    return d


def factorize(d: int) -> Factorization:
    """Trial division up to sqrt(d)."""
    n = _check(d)
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            factors.append((p, a))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return Factorization(d, tuple(factors))


def divisors(d: int) -> list[int]:
    _check(d)
    small, large = [], []
    for j in range(1, isqrt(d) + 1):
        if d % j == 0:
            small.append(j)
            if j != d // j:
                large.append(d // j)
    return small + large[::-1]


def tau(d: int) -> int:
    """Number of positive divisors."""
    return prod(1 + a for _, a in factorize(d).factors)


def phi(d: int) -> int:
    """Euler totient, d * prod(1 - 1/p) evaluated exactly."""
    result = d
    for p, _ in factorize(d).factors:
        result = result // p * (p - 1)
    return result


def mobius(d: int) -> int:
    fac = factorize(d)
    if any(a > 1 for _, a in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def gcd_sum(d: int) -> int:
    """Pillai's function from the product formula d * prod(1 + a(1 - 1/p)).

    Each factor is written as (p + a(p - 1)) / p; p**a divides d, so the
    division by p is exact.
    """
    result = d
    for p, a in factorize(d).factors:
        result = result // p * (p + a * (p - 1))
    return result


def gcd_sum_direct(d: int) -> int:
    _check(d)
    return sum(gcd(n, d) for n in range(1, d + 1))


def gamma_mobius(d: int) -> int:
    """sum_{j | d} j * tau(j) * mu(d / j)."""
    return sum(j * tau(j) * mobius(d // j) for j in divisors(d))


def summatory_gamma(d: int) -> int:
    """sum_{j | d} gamma(j); equals d * tau(d)."""
    return sum(gcd_sum(j) for j in divisors(d))
