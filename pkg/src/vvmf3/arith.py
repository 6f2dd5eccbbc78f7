"""Exact rational scalars and the number-theoretic substrate.

Everything downstream computes with ``fractions.Fraction``: arbitrary
precision, eagerly reduced, denominator always positive.  This module adds
p-adic valuations with a proper infinity for zero, Bernoulli numbers via the
classical recurrence, divisor power sums, and enough primality machinery
(deterministic Miller-Rabin plus Pollard rho) to factor the integers that
show up in coefficient denominators.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

# The universal scalar type.  An alias rather than a wrapper: Fraction already
# guarantees reduced form and a positive denominator.
ExactRational = Fraction

# A p-adic valuation is a plain int, except that the valuation of zero is
# INFINITY, which compares greater than every int and absorbs addition.
ValuationValue = Union[int, float]
INFINITY: float = math.inf

RationalLike = Union[Fraction, int]

__all__ = [
    "ExactRational",
    "INFINITY",
    "RationalLike",
    "ValuationValue",
    "bernoulli",
    "int_valuation",
    "is_prime",
    "prime_factors",
    "rational_str",
    "sigma_k",
    "valuation_p",
]


def rational_str(x: RationalLike) -> str:
    """Canonical text form "num/den", with "/den" omitted when den is 1.

    >>> rational_str(Fraction(-40, 33))
    '-40/33'
    >>> rational_str(Fraction(10, 2))
    '5'
    """
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# Witness set giving deterministic Miller-Rabin for n < 3.3e24, far beyond
# anything a level or coefficient denominator produces here.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set).

    >>> [p for p in range(20) if is_prime(p)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of an odd composite n (Floyd cycle, c sweep)."""
    for c in range(1, 1000):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho factorization failed for {n}")


def prime_factors(n: int) -> list[tuple[int, int]]:
    """Prime factorization as sorted (prime, exponent) pairs; 1 -> [].

    >>> prime_factors(5544)
    [(2, 3), (3, 2), (7, 1), (11, 1)]
    """
    if n < 1:
        raise ValueError(f"prime_factors needs n >= 1, got {n}")
    out: dict[int, int] = {}
    m = n
    d = 2
    while d * d <= m and d < 10_000:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    stack = [m] if m > 1 else []
    while stack:
        v = stack.pop()
        if is_prime(v):
            out[v] = out.get(v, 0) + 1
            continue
        f = _pollard_rho(v)
        stack.append(f)
        stack.append(v // f)
    return sorted(out.items())


def int_valuation(n: int, p: int) -> ValuationValue:
    """Exponent of p in n, for n an integer; INFINITY when n is 0."""
    if n == 0:
        return INFINITY
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_p(x: RationalLike, p: int) -> ValuationValue:
    """p-adic valuation of a rational; INFINITY for zero.

    >>> valuation_p(Fraction(6, 2), 3)
    1
    >>> valuation_p(Fraction(-504, 343), 7)
    -2
    >>> valuation_p(0, 5)
    inf
    """
    if not is_prime(p):
        raise ValueError(f"valuation_p needs a prime, got {p}")
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


# B_0, B_1, ... with the B_1 = -1/2 convention; extended on demand.
_BERNOULLI: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number for even k >= 2, memoized.

    Uses the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 solved for B_m.

    >>> bernoulli(2), bernoulli(4), bernoulli(6)
    (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42))
    """
    if k < 2 or k % 2 != 0:
        raise ValueError(f"bernoulli is defined here for even k >= 2, got {k}")
    while len(_BERNOULLI) <= k:
        m = len(_BERNOULLI)
        acc = Fraction(0)
        for j in range(m):
            if _BERNOULLI[j]:
                acc += math.comb(m + 1, j) * _BERNOULLI[j]
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[k]


def sigma_k(k: int, n: int) -> int:
    """Sum of k-th powers of the positive divisors of n.

    >>> sigma_k(1, 6), sigma_k(3, 2), sigma_k(3, 1)
    (12, 9, 1)
    """
    if n <= 0:
        raise ValueError(f"sigma_k needs n >= 1, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total
