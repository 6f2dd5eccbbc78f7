"""Eigenvalue data for the T-generator: validation, enumeration, families.

A representation is summarized by its T-eigenvalue exponents: three distinct
residues A < B < C modulo the level N, with gcd(A, B, C, N) = 1 so the level
is exact, and N | 4(A+B+C) so the minimal weight k0 = (4*sigma - 2N)/N is an
integer.  This module validates and enumerates such triples, constructs the
two induced-character families (from the index-2 and index-3 subgroups of the
modular group), and classifies triples for the unbounded-denominator search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

__all__ = [
    "CharacterData",
    "Classification",
    "FamilyResult",
    "InvalidTripleError",
    "RepTriple",
    "classify_triple",
    "enumerate_level",
    "gamma02_family",
    "gamma3_family",
    "validate_triple",
]

LEVEL7_PRIMITIVE_CLASSES = frozenset({frozenset({1, 2, 4}), frozenset({3, 5, 6})})

PRIMITIVE_NOTE = "congruence kernel asserted without proof; not verified here"


class InvalidTripleError(ValueError):
    """Structured rejection; ``code`` names the violated invariant."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RepTriple:
    """Validated eigenvalue exponents (A, B, C) at level N, A < B < C."""

    A: int
    B: int
    C: int
    N: int

    def __post_init__(self) -> None:
        a, b, c, n = self.A, self.B, self.C, self.N
        if n < 1:
            raise InvalidTripleError("range", f"level must be >= 1, got {n}")
        if not (0 <= a <= n - 1 and 0 <= b <= n - 1 and 0 <= c <= n - 1):
            raise InvalidTripleError(
                "range",
                f"exponents must lie in [0, {n - 1}] for level {n}, got ({a}, {b}, {c})",
            )
        if not a < b < c:
            code = "distinct" if len({a, b, c}) < 3 else "range"
            raise InvalidTripleError(
                code, f"exponents must be distinct and ordered A < B < C, got ({a}, {b}, {c})"
            )
        g = math.gcd(math.gcd(a, b), math.gcd(c, n))
        if g != 1:
            raise InvalidTripleError(
                "gcd", f"gcd(A, B, C, N) must be 1 for an exact level, got {g}"
            )
        if (4 * (a + b + c)) % n != 0:
            raise InvalidTripleError(
                "weight",
                f"level {n} does not divide 4*sigma = {4 * (a + b + c)}, "
                "so the minimal weight is not an integer",
            )

    @property
    def sigma(self) -> int:
        """Sum of the exponents."""
        return self.A + self.B + self.C

    @property
    def omega(self) -> int:
        """Sum of pairwise products of the exponents."""
        return self.A * self.B + self.A * self.C + self.B * self.C

    @property
    def product(self) -> int:
        """Product of the exponents."""
        return self.A * self.B * self.C

    @property
    def k0(self) -> int:
        """Minimal weight (4*sigma - 2N)/N; integral by the level invariant."""
        return (4 * self.sigma - 2 * self.N) // self.N

    @property
    def exponents(self) -> tuple[Fraction, Fraction, Fraction]:
        """Leading exponents A/N, B/N, C/N as exact rationals."""
        return (
            Fraction(self.A, self.N),
            Fraction(self.B, self.N),
            Fraction(self.C, self.N),
        )

    def to_json_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "C": self.C, "N": self.N, "k0": self.k0}

    @classmethod
    def from_json_dict(cls, data: dict) -> "RepTriple":
        return validate_triple(data["A"], data["B"], data["C"], data["N"])


def validate_triple(A: int, B: int, C: int, N: int) -> RepTriple:
    """Canonical validated triple (exponents sorted), or a structured rejection.

    >>> validate_triple(1, 2, 4, 7).k0
    2
    >>> validate_triple(0, 1, 2, 5)
    Traceback (most recent call last):
        ...
    vvmf3.reps.InvalidTripleError: level 5 does not divide 4*sigma = 12, so the minimal weight is not an integer
    """
    a, b, c = sorted((A, B, C))
    return RepTriple(a, b, c, N)


def enumerate_level(N: int) -> list[RepTriple]:
    """All admissible triples whose level is exactly N, sorted by (A, B, C).

    >>> [(t.A, t.B, t.C) for t in enumerate_level(7)]
    [(0, 1, 6), (0, 2, 5), (0, 3, 4), (1, 2, 4), (3, 5, 6)]
    >>> enumerate_level(2)
    []
    """
    if N < 1:
        raise ValueError(f"level must be >= 1, got {N}")
    out: list[RepTriple] = []
    step = N // math.gcd(4, N)  # 4*sigma = 0 mod N  <=>  sigma = 0 mod step
    for a in range(N - 2):
        for b in range(a + 1, N - 1):
            first = -(a + b) % step
            if first <= b:
                first += ((b - first) // step + 1) * step
            for c in range(first, N, step):
                if math.gcd(math.gcd(a, b), math.gcd(c, N)) != 1:
                    continue
                out.append(RepTriple(a, b, c, N))
    return out


@dataclass(frozen=True)
class CharacterData:
    """Character parameters for one induced family.

    The order-4 family ("gamma02") takes a modulus M >= 1, a residue A with
    gcd(A, M) = 1 and 0 <= A < M, and a quarter-turn x in {0, 1, 2, 3}.  The
    order-3 family ("gamma3") takes three quarter-turns x0, x1, x2 in
    {0, 1, 2, 3}; their required parity agreement is checked at construction
    time by :func:`gamma3_family`, not here.
    """

    family: str
    M: Optional[int] = None
    A: Optional[int] = None
    x: Optional[int] = None
    x0: Optional[int] = None
    x1: Optional[int] = None
    x2: Optional[int] = None

    def __post_init__(self) -> None:
        if self.family == "gamma02":
            if self.M is None or self.A is None or self.x is None:
                raise ValueError("gamma02 character data needs M, A, x")
            if self.M < 1:
                raise ValueError(f"M must be >= 1, got {self.M}")
            if not 0 <= self.A < self.M:
                raise ValueError(f"A must satisfy 0 <= A < M, got A={self.A}, M={self.M}")
            if math.gcd(self.A, self.M) != 1:
                raise ValueError(f"gcd(A, M) must be 1, got gcd({self.A}, {self.M})")
            if self.x not in (0, 1, 2, 3):
                raise ValueError(f"x must be one of 0..3, got {self.x}")
        elif self.family == "gamma3":
            for name, v in (("x0", self.x0), ("x1", self.x1), ("x2", self.x2)):
                if v not in (0, 1, 2, 3):
                    raise ValueError(f"{name} must be one of 0..3, got {v}")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def gamma02(cls, M: int, A: int, x: int) -> "CharacterData":
        return cls(family="gamma02", M=M, A=A, x=x)

    @classmethod
    def gamma3(cls, x0: int, x1: int, x2: int) -> "CharacterData":
        return cls(family="gamma3", x0=x0, x1=x1, x2=x2)

    def to_json_dict(self) -> dict:
        if self.family == "gamma02":
            return {"family": self.family, "M": self.M, "A": self.A, "x": self.x}
        return {"family": self.family, "x0": self.x0, "x1": self.x1, "x2": self.x2}


@dataclass(frozen=True)
class FamilyResult:
    """Induced triple plus family metadata.

    ``exponents`` keeps the eigenvalue exponents in construction order (before
    sorting into the canonical triple).  ``formula_level`` is the closed-form
    level 8M/gcd(4, Mx) for the gamma02 family (None for gamma3) and must
    agree with ``triple.N``.  ``finite_image_pattern_m`` is M' when the
    finite-image pattern N = 2M' with two exponents M' apart (M' >= 4) holds.
    ``chi_exponents`` are the character values on the presentation generators,
    as exponents of e( ), so the defining relation can be checked exactly.
    """

    family: str
    params: CharacterData
    exponents: tuple[Fraction, ...]
    triple: RepTriple
    formula_level: Optional[int]
    finite_image_pattern_m: Optional[int]
    chi_exponents: dict[str, Fraction]

    @property
    def level(self) -> int:
        return self.triple.N

    def to_json_dict(self) -> dict:
        from .arith import rational_str

        return {
            "family": self.family,
            "params": self.params.to_json_dict(),
            "exponents": [rational_str(e) for e in self.exponents],
            "triple": self.triple.to_json_dict(),
            "level": self.level,
            "formula_level": self.formula_level,
            "finite_image_pattern_m": self.finite_image_pattern_m,
            "chi_exponents": {k: rational_str(v) for k, v in self.chi_exponents.items()},
        }


def _triple_from_exponents(exponents: list[Fraction]) -> RepTriple:
    level = 1
    for e in exponents:
        level = level * e.denominator // math.gcd(level, e.denominator)
    ints = sorted(int(e * level) for e in exponents)
    return validate_triple(ints[0], ints[1], ints[2], level)


def _pattern_m(t: RepTriple) -> Optional[int]:
    """M' when N = 2M', M' >= 4, and two exponents differ by exactly M'."""
    if t.N % 2 != 0:
        return None
    m = t.N // 2
    if m < 4:
        return None
    if t.B - t.A == m or t.C - t.B == m or t.C - t.A == m:
        return m
    return None


def gamma02_family(data: CharacterData) -> FamilyResult:
    """Induced triple for the order-4 presentation <E, P1, P2 | E^4 = E P1 P2 = 1>.

    chi(P2) = e(A/M), chi(E) = e(x/4); the remaining two eigenvalues are the
    square roots of chi(P1) = chi(E)^-1 chi(P2)^-1, which differ by a sign.
    The exponents are placed over the common denominator N = 8M/gcd(4, Mx)
    and validated at that level; inputs whose eigenvalue orders degenerate to
    a proper divisor of N (possible in the 2-adic part) fail the gcd
    invariant and are rejected, as are eigenvalue collisions.
    """
    if data.family != "gamma02":
        raise ValueError(f"expected gamma02 character data, got {data.family!r}")
    m, a, x = data.M, data.A, data.x
    e1 = Fraction(a, m) % 1
    e2 = Fraction(-(4 * a + m * x), 8 * m) % 1
    e3 = (e2 + Fraction(1, 2)) % 1
    if len({e1, e2, e3}) < 3:
        raise InvalidTripleError(
            "collision",
            f"eigenvalue exponents collide ({e1}, {e2}, {e3}); "
            "the induced representation is reducible",
        )
    level = 8 * m // math.gcd(4, m * x)
    scaled = sorted(e * level for e in (e1, e2, e3))
    # N * e_j is integral: gcd(4, Mx) divides both 4A + Mx and 4M.
    assert all(v.denominator == 1 for v in scaled), (data, scaled)
    triple = validate_triple(int(scaled[0]), int(scaled[1]), int(scaled[2]), level)
    return FamilyResult(
        family="gamma02",
        params=data,
        exponents=(e1, e2, e3),
        triple=triple,
        formula_level=level,
        finite_image_pattern_m=_pattern_m(triple),
        chi_exponents={
            "E": Fraction(x, 4) % 1,
            "P1": (2 * e2) % 1,
            "P2": Fraction(a, m) % 1,
        },
    )


def gamma3_family(data: CharacterData) -> FamilyResult:
    """Induced triple for the order-3 presentation with relation E0 E1 E2 P = 1.

    chi(E_j) = e(x_j/4); with x = -(x0+x1+x2), chi(P) = e(x/4) and the
    eigenvalue exponents are (x + 4j)/12 mod 1 for j = 0, 1, 2 (the three cube
    roots of chi(P)).  Levels always divide 12.
    """
    if data.family != "gamma3":
        raise ValueError(f"expected gamma3 character data, got {data.family!r}")
    x0, x1, x2 = data.x0, data.x1, data.x2
    if not (x0 % 2 == x1 % 2 == x2 % 2):
        raise InvalidTripleError(
            "parity", f"quarter-turns must agree mod 2, got ({x0}, {x1}, {x2})"
        )
    x = -(x0 + x1 + x2)
    exps = tuple(Fraction(x + 4 * j, 12) % 1 for j in range(3))
    triple = _triple_from_exponents(list(exps))
    return FamilyResult(
        family="gamma3",
        params=data,
        exponents=exps,
        triple=triple,
        formula_level=None,
        finite_image_pattern_m=_pattern_m(triple),
        chi_exponents={
            "E0": Fraction(x0, 4) % 1,
            "E1": Fraction(x1, 4) % 1,
            "E2": Fraction(x2, 4) % 1,
            "P": Fraction(x, 4) % 1,
        },
    )


@dataclass(frozen=True)
class Classification:
    """Flags driving the bounded/unbounded denominator expectation."""

    congruence_by_small_level: bool
    primitive_level7: bool
    gamma02_pattern: Optional[int]
    ubd_primes: tuple[int, ...]
    notes: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "congruence_by_small_level": self.congruence_by_small_level,
            "primitive_level7": self.primitive_level7,
            "gamma02_pattern": self.gamma02_pattern,
            "ubd_primes": list(self.ubd_primes),
            "notes": list(self.notes),
        }


def classify_triple(t: RepTriple) -> Classification:
    """Classification flags for a validated triple.

    >>> classify_triple(validate_triple(1, 3, 7, 11)).ubd_primes
    (11,)
    """
    # Imported here: the valuation module depends on this one.
    from .valuation import ubd_criterion

    primitive = t.N == 7 and frozenset({t.A, t.B, t.C}) in LEVEL7_PRIMITIVE_CLASSES
    notes = (PRIMITIVE_NOTE,) if primitive else ()
    return Classification(
        congruence_by_small_level=t.N < 6,
        primitive_level7=primitive,
        gamma02_pattern=_pattern_m(t),
        ubd_primes=tuple(ubd_criterion(t.N)),
        notes=notes,
    )
