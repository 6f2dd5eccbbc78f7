"""p-adic analysis of the recursion coefficients.

The engine behind the unbounded-denominator verdicts: the integers
z_n = N^3 * phi_1(A/N + n) have p-adic valuation constant in n for the prime
cases classified here, and when additionally nu_p(N) > 2 nu_p(z_0) the
coefficient valuations obey the exact law

    nu_p(a(n)) = n * delta - nu_p(prod_{k=1..n} k * lambda(k)),

delta = nu_p(z_n) - nu_p(N) < 0, a strictly decreasing negative function of n.
A prime passing the criterion below therefore certifies unbounded denominators
at desk scale; the module also profiles observed denominators directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .arith import INFINITY, ValuationValue, int_valuation, is_prime, prime_factors, valuation_p
from .mde import build_mde, component_series, lambda_n
from .qseries import QExpansion
from .reps import RepTriple

__all__ = [
    "DenominatorProfile",
    "FormulaInapplicable",
    "PrimeCase",
    "PrimeStats",
    "ValuationReport",
    "classify_prime",
    "denominator_profile",
    "predicted_valuation",
    "ubd_criterion",
    "verify_formula",
    "z_n_value",
]

DEFAULT_WINDOW = 50
DEFAULT_N_MAX = 100

# Levels dividing this number never pass the criterion; its prime content is
# exactly the p-power thresholds of the covered cases.
_BOUNDED_PART = 2**8 * 3**4 * 5**2 * 7**2


class FormulaInapplicable(Exception):
    """The valuation law makes no claim for this input; not an error."""


@dataclass(frozen=True)
class PrimeCase:
    """Classifier outcome for a prime dividing the level.

    case_id is 1..8 for a covered case (subcase 'a' or 'b' refines case 3) and
    None when no case applies.  lead is the exponent placed in the leading
    role, selected so that nu_p(z_n) is constant at the predicted value over
    the verification window; window_verified records that the check passed.
    delta = predicted - nu_p(N), negative whenever the coefficient law's
    hypothesis nu_p(N) > 2 nu_p(z_0) holds.
    """

    prime: int
    case_id: Optional[int]
    subcase: Optional[str]
    predicted_z_valuation: Optional[int]
    lead: Optional[int]
    delta: Optional[int]
    window: int
    window_verified: bool

    def to_json_dict(self) -> dict:
        return {
            "prime": self.prime,
            "case": self.case_id if self.case_id is not None else "not covered",
            "subcase": self.subcase,
            "predicted_z_valuation": self.predicted_z_valuation,
            "lead": self.lead,
            "delta": self.delta,
            "window": self.window,
            "window_verified": self.window_verified,
        }


@dataclass(frozen=True)
class ValuationReport:
    """Observed versus predicted nu_p(a(n)) rows plus a verdict.

    verdict is "formula-verified" only when the case is covered, the
    nu_p(N) > 2 nu_p(z_0) hypothesis holds, and every row matches exactly.
    "inapplicable" means the law makes no claim (uncovered case or hypothesis
    failure); the rows then carry observations with predicted = None.
    """

    triple: RepTriple
    prime: int
    lead: int
    rows: tuple[tuple[int, ValuationValue, Optional[int]], ...]
    verdict: str
    case: PrimeCase
    applicable: bool
    reason: Optional[str]

    def to_json_dict(self) -> dict:
        return {
            "triple": self.triple.to_json_dict(),
            "prime": self.prime,
            "lead": self.lead,
            "verdict": self.verdict,
            "applicable": self.applicable,
            "reason": self.reason,
            "case": self.case.to_json_dict(),
            "rows": [
                {
                    "n": n,
                    "observed": "inf" if observed == INFINITY else observed,
                    "predicted": predicted,
                }
                for n, observed, predicted in self.rows
            ],
        }


def z_n_value(t: RepTriple, lead: int, n: int) -> int:
    """The integer N^3 * phi_1(lead/N + n); symmetric in the other exponents.

    >>> from .reps import validate_triple
    >>> z_n_value(validate_triple(1, 2, 4, 7), 1, 0)
    504
    """
    if n < 0:
        raise ValueError(f"z_n_value needs n >= 0, got {n}")
    if lead not in (t.A, t.B, t.C):
        raise ValueError(f"lead exponent {lead} is not one of {(t.A, t.B, t.C)}")
    sig, om, pi, big_n = t.sigma, t.omega, t.product, t.N
    u = lead + big_n * n
    return (
        24 * (10 * om * big_n * n + sig * u * (u - big_n))
        + 8 * (2 * sig - big_n) * (sig * (4 * sig - big_n) - 15 * om - 6 * sig * u)
        + 240 * lead * om
        + 504 * pi
    )


def _case_table(t: RepTriple, p: int) -> Optional[tuple[int, Optional[str], int]]:
    """(case_id, subcase, predicted nu_p(z_n)) or None when not covered."""
    big_n, om, pi = t.N, t.omega, t.product
    if p > 7:
        return (1, None, 0)
    if p == 7:
        if pi % 7 == 0:
            return (2, None, 0)
        if big_n % 49 == 0:
            return (3, "a", 1) if om % 7 == 0 else (3, "b", 0)
        return None
    if p == 5:
        if pi % 5 != 0:
            return (4, None, 0)
        return (5, None, 1) if big_n % 25 == 0 else None
    if p == 3:
        if om % 3 != 0:
            return (6, None, 1) if big_n % 9 == 0 else None
        # 3|omega with 27|N forces every exponent into one nonzero residue
        # class mod 3, so z_n = 24*lead*[10*lead*(Y+Z) + 31*Y*Z] mod 81 has
        # one factor 3 from 24 and exactly two from the bracket for some
        # labeling (all three brackets >= 3 would need the exponents congruent
        # mod 9, impossible with nu_3(sigma) >= 3): the constant is 3.
        return (7, None, 3) if big_n % 27 == 0 else None
    # p == 2
    return (8, None, 4) if big_n % 32 == 0 else None


def classify_prime(t: RepTriple, p: int, window: int = DEFAULT_WINDOW) -> PrimeCase:
    """Match a prime divisor of the level against the eight covered cases.

    The structural conditions involve only p, N, omega, and the exponent
    product, so they are labeling-independent; the leading role is then chosen
    by checking nu_p(z_n) constancy at the predicted value for n in
    [0, window], smallest exponent first.
    """
    if not is_prime(p):
        raise ValueError(f"classify_prime needs a prime, got {p}")
    if t.N % p != 0:
        raise ValueError(f"{p} does not divide the level {t.N}")
    entry = _case_table(t, p)
    if entry is None:
        return PrimeCase(
            prime=p,
            case_id=None,
            subcase=None,
            predicted_z_valuation=None,
            lead=None,
            delta=None,
            window=window,
            window_verified=False,
        )
    case_id, subcase, predicted = entry
    lead = None
    for cand in (t.A, t.B, t.C):
        if all(
            int_valuation(z_n_value(t, cand, n), p) == predicted
            for n in range(window + 1)
        ):
            lead = cand
            break
    return PrimeCase(
        prime=p,
        case_id=case_id,
        subcase=subcase,
        predicted_z_valuation=predicted,
        lead=lead,
        delta=predicted - int_valuation(t.N, p),
        window=window,
        window_verified=lead is not None,
    )


def _delta_for_lead(t: RepTriple, p: int, lead: int, window: int) -> int:
    """delta for the given leading role, or FormulaInapplicable."""
    vz = int_valuation(z_n_value(t, lead, 0), p)
    if vz == INFINITY or any(
        int_valuation(z_n_value(t, lead, n), p) != vz for n in range(1, window + 1)
    ):
        raise FormulaInapplicable(
            f"nu_{p}(z_n) is not constant over the window for lead {lead}"
        )
    nu_level = int_valuation(t.N, p)
    if not nu_level > 2 * vz:
        raise FormulaInapplicable(
            f"hypothesis nu_p(N) > 2 nu_p(z_0) fails: {nu_level} <= {2 * vz}"
        )
    return vz - nu_level


def predicted_valuation(t: RepTriple, p: int, lead: int, n: int) -> int:
    """The law's value n*delta - nu_p(prod_{k<=n} k lambda(k)).

    Raises FormulaInapplicable when no covered case applies, the z-valuations
    are not constant for this lead, or the hypothesis fails.

    >>> from .reps import validate_triple
    >>> predicted_valuation(validate_triple(1, 3, 7, 11), 11, 1, 1)
    -1
    """
    if n < 1:
        raise ValueError(f"predicted_valuation needs n >= 1, got {n}")
    case = classify_prime(t, p)
    if case.case_id is None:
        raise FormulaInapplicable(f"no covered case for p = {p} at level {t.N}")
    delta = _delta_for_lead(t, p, lead, case.window)
    acc = 0
    for k in range(1, n + 1):
        acc += int_valuation(k, p) + int_valuation(lambda_n(t, lead, k), p)
    return n * delta - acc


def _observational_verdict(
    observed: list[ValuationValue], window: int
) -> str:
    finite = [v for v in observed if v != INFINITY]
    if not finite or min(finite) >= 0:
        return "bounded-in-window"
    running = INFINITY
    last_new_min = 0
    for i, v in enumerate(observed):
        if v < running:
            running = v
            last_new_min = i
    if running <= -3 and last_new_min >= len(observed) - max(1, window // 10):
        return "empirically-unbounded"
    return "bounded-in-window"


def verify_formula(t: RepTriple, p: int, n_max: int = DEFAULT_N_MAX) -> ValuationReport:
    """Compare observed nu_p(a(n)) against the law for 1 <= n <= n_max."""
    case = classify_prime(t, p)
    lead = case.lead if case.lead is not None else t.A
    applicable = case.case_id is not None and case.window_verified
    reason: Optional[str] = None
    delta = 0
    if applicable:
        try:
            delta = _delta_for_lead(t, p, lead, case.window)
        except FormulaInapplicable as exc:
            applicable = False
            reason = str(exc)
    elif case.case_id is None:
        reason = f"no covered case for p = {p} at level {t.N}"
    else:
        reason = "no leading role attains the predicted constant z-valuation"

    comp = component_series(build_mde(t, n_max), lead, n_max)
    rows: list[tuple[int, ValuationValue, Optional[int]]] = []
    acc = 0
    for n in range(1, n_max + 1):
        acc += int_valuation(n, p) + int_valuation(lambda_n(t, lead, n), p)
        predicted = n * delta - acc if applicable else None
        rows.append((n, valuation_p(comp.coeffs[n], p), predicted))

    if not applicable:
        verdict = "inapplicable"
    elif all(observed == predicted for _, observed, predicted in rows):
        verdict = "formula-verified"
    else:
        verdict = _observational_verdict([obs for _, obs, _ in rows], n_max)
    return ValuationReport(
        triple=t,
        prime=p,
        lead=lead,
        rows=tuple(rows),
        verdict=verdict,
        case=case,
        applicable=applicable,
        reason=reason,
    )


def ubd_criterion(N: int) -> list[int]:
    """Primes dividing N / gcd(N, 2^8 * 3^4 * 5^2 * 7^2), sorted.

    Every listed prime admits a covered case whose hypothesis holds, so each
    certifies unbounded denominators for every admissible triple at level N.

    >>> ubd_criterion(22), ubd_criterion(48), ubd_criterion(512)
    ([11], [], [2])
    """
    if N < 1:
        raise ValueError(f"level must be >= 1, got {N}")
    rest = N // math.gcd(N, _BOUNDED_PART)
    return [p for p, _ in prime_factors(rest)]


@dataclass(frozen=True)
class PrimeStats:
    """Valuation statistics for one prime over a coefficient window."""

    prime: int
    min_valuation: int
    min_index: int
    new_min_count: int
    last_new_min_index: int
    strictly_decreasing: bool

    def to_json_dict(self) -> dict:
        return {
            "prime": self.prime,
            "min_valuation": self.min_valuation,
            "min_index": self.min_index,
            "new_min_count": self.new_min_count,
            "last_new_min_index": self.last_new_min_index,
            "strictly_decreasing": self.strictly_decreasing,
        }


@dataclass(frozen=True)
class DenominatorProfile:
    """Per-prime denominator statistics plus an overall verdict.

    Verdicts are window-scoped observations, never theorems: "all-integral"
    (no denominators at all), "decreasing-unbounded-pattern" (some prime keeps
    attaining new strict minima into the last tenth of the window, reaching
    at most -3), or "bounded-in-window" (everything else).
    """

    window: int
    stats: tuple[PrimeStats, ...]
    verdict: str

    def to_json_dict(self) -> dict:
        return {
            "window": self.window,
            "stats": [s.to_json_dict() for s in self.stats],
            "verdict": self.verdict,
        }


def denominator_profile(f: QExpansion, n_max: Optional[int] = None) -> DenominatorProfile:
    """Profile the denominators of a series through n_max coefficients."""
    T = f.order if n_max is None else n_max
    if T > f.order:
        raise ValueError(f"series valid to order {f.order}, requested {T}")
    coeffs = f.coeffs[: T + 1]

    primes: list[int] = []
    for c in coeffs:
        d = c.denominator
        for p in primes:
            while d % p == 0:
                d //= p
        if d > 1:
            primes.extend(p for p, _ in prime_factors(d))
            primes.sort()

    stats = []
    for p in primes:
        vals = [valuation_p(c, p) for c in coeffs]
        running = INFINITY
        min_index = 0
        new_min_count = 0
        last_new_min = 0
        strictly = True
        for i, v in enumerate(vals):
            if i and v >= vals[i - 1]:
                strictly = False
            if v < running:
                running = v
                min_index = i
                new_min_count += 1
                last_new_min = i
        stats.append(
            PrimeStats(
                prime=p,
                min_valuation=running,
                min_index=min_index,
                new_min_count=new_min_count,
                last_new_min_index=last_new_min,
                strictly_decreasing=strictly,
            )
        )

    if not stats:
        verdict = "all-integral"
    elif any(
        s.min_valuation <= -3 and s.last_new_min_index >= T - max(1, T // 10)
        for s in stats
    ):
        verdict = "decreasing-unbounded-pattern"
    else:
        verdict = "bounded-in-window"
    return DenominatorProfile(window=T, stats=tuple(stats), verdict=verdict)
