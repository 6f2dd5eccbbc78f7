"""Shared test helpers: an independent slow oracle and deterministic samplers.

The oracle functions rebuild everything from first principles with Fractions
(Bernoulli recurrence, divisor sums, explicit Cauchy products, recursion
dividing by the full indicial cubic) and share no code with the package, so
agreement is meaningful evidence.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from math import comb, gcd

from vvmf3.reps import RepTriple, validate_triple

SEED = 20260826

_bern: list[Fraction] = [Fraction(1)]


def oracle_bernoulli(m: int) -> Fraction:
    while len(_bern) <= m:
        k = len(_bern)
        s = sum(Fraction(comb(k + 1, j)) * _bern[j] for j in range(k))
        _bern.append(-s / (k + 1))
    return _bern[m]


def oracle_sigma(k: int, n: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def oracle_eisenstein(k: int, T: int) -> list[Fraction]:
    c = -Fraction(2 * k) / oracle_bernoulli(k)
    return [Fraction(1)] + [c * oracle_sigma(k - 1, n) for n in range(1, T + 1)]


def _smul(s: Fraction, f: list[Fraction]) -> list[Fraction]:
    return [s * x for x in f]


def _sadd(*fs: list[Fraction]) -> list[Fraction]:
    T = min(len(f) for f in fs)
    return [sum(f[i] for f in fs) for i in range(T)]


def _smulser(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    T = min(len(f), len(g))
    return [sum(f[j] * g[n - j] for j in range(n + 1)) for n in range(T)]


def oracle_g_series(t: RepTriple, T: int) -> tuple[list[Fraction], ...]:
    """(g0, g1, g2) built with explicit Cauchy products, no shared code."""
    sig, om, pi, N = t.sigma, t.omega, t.product, t.N
    x0 = 4 * sig - 2 * N
    x4 = 144 * om - 3 * x0 * (x0 + 4 * N) - 8 * N * N
    x6 = x0 * x4 + x0 * (x0 + 2 * N) * (x0 + 4 * N) - 1728 * pi
    k0 = Fraction(x0, N)
    a4 = Fraction(x4, (12 * N) ** 2)
    a6 = Fraction(x6, (12 * N) ** 3)
    P = _smul(Fraction(-1, 12), oracle_eisenstein(2, T))
    Q = _smul(Fraction(1, 144), oracle_eisenstein(4, T))
    R = _smul(Fraction(-1, 432), oracle_eisenstein(6, T))
    P2 = _smulser(P, P)
    P3 = _smulser(P2, P)
    PQ = _smulser(P, Q)
    one = [Fraction(0)] * (T + 1)
    one[0] = Fraction(1)
    three = [Fraction(0)] * (T + 1)
    three[0] = Fraction(3)
    g2 = _sadd(three, _smul(3 * k0 + 6, P))
    g1 = _sadd(
        one,
        _smul(3 * k0 + 6, P),
        _smul(3 * k0 * k0 + 9 * k0 + 6, P2),
        _smul(3 * k0 + 2 + 144 * a4, Q),
    )
    g0 = _sadd(
        _smul(k0 * (3 * k0 + 2 + 144 * a4), PQ),
        _smul(k0 * (k0 + 1) * (k0 + 2), P3),
        _smul(k0 - 432 * a6, R),
    )
    return g0, g1, g2


def oracle_phi_j(gj: tuple[list[Fraction], ...], j: int, lam: Fraction) -> Fraction:
    g0, g1, g2 = gj
    return g2[j] * lam * (lam - 1) + g1[j] * lam + g0[j]


def oracle_phi(gj: tuple[list[Fraction], ...], lam: Fraction) -> Fraction:
    return lam * (lam - 1) * (lam - 2) + oracle_phi_j(gj, 0, lam)


def oracle_coefficients(t: RepTriple, lead: int, T: int) -> list[Fraction]:
    """Recursion dividing by the full cubic, one Fraction division per step."""
    gj = oracle_g_series(t, T)
    r = Fraction(lead, t.N)
    a = [Fraction(1)]
    for n in range(1, T + 1):
        s = sum(a[j] * oracle_phi_j(gj, n - j, r + j) for j in range(n))
        a.append(-s / oracle_phi(gj, r + n))
    return a


def brute_force_level(N: int) -> list[tuple[int, int, int]]:
    """All admissible (A, B, C) at level N by filtering every 3-subset."""
    out = []
    for a in range(N):
        for b in range(a + 1, N):
            for c in range(b + 1, N):
                if math.gcd(math.gcd(a, b), math.gcd(c, N)) != 1:
                    continue
                if (4 * (a + b + c)) % N != 0:
                    continue
                out.append((a, b, c))
    return out


def sample_triples(
    count: int, level_max: int, level_min: int = 3, seed: int = SEED
) -> list[RepTriple]:
    """Deterministic sample of admissible triples with level_min <= N <= level_max."""
    rng = random.Random(seed)
    out: list[RepTriple] = []
    while len(out) < count:
        N = rng.randrange(level_min, level_max + 1)
        if N < 3:
            continue
        step = N // gcd(4, N)
        a = rng.randrange(0, N - 2)
        b = rng.randrange(a + 1, N - 1)
        candidates = [
            c
            for c in range(b + 1, N)
            if (a + b + c) % step == 0
            and gcd(gcd(a, b), gcd(c, N)) == 1
        ]
        if not candidates:
            continue
        out.append(validate_triple(a, b, rng.choice(candidates), N))
    return out
