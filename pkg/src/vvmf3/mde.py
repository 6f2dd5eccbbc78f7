"""The order-3 modular differential system attached to a triple.

For a validated triple the minimal-weight components solve a monic Fuchsian
equation in the q-variable,

    q^3 f''' + g2(q) q^2 f'' + g1(q) q f' + g0(q) f = 0,

whose coefficient series g_j are exact rational combinations of Eisenstein
series determined by two rational parameters alpha4 and alpha6.  Those in turn
come from integers x0, x4, x6 determined by the triple:

    x0 = 4*sigma - 2N
    x4 = 144*omega - 3*x0*(x0 + 4N) - 8N^2
    x6 = x0*x4 + x0*(x0 + 2N)*(x0 + 4N) - 1728*product

with alpha4 = x4/(12N)^2 and alpha6 = x6/(12N)^3.  The indicial polynomial of
the system then has exactly A/N, B/N, C/N as roots, which is what pins x4 and
x6 (matching the indicial cubic coefficient by coefficient forces
alpha4 = omega/N^2 - (3 k0^2 + 12 k0 + 8)/144 and the x6 expression above).

The Frobenius recursion runs on scaled integers: 6N^3 * phi_m(A/N + j) and
6N * n * lambda(n) are integers (an integrality property of the G_j proved via
the theory of modular forms mod small primes), so each coefficient is a single
Fraction construction from an integer numerator and a shared denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import RationalLike
from .qseries import QExpansion, _core_int_arrays, modular_derivative
from .reps import RepTriple

__all__ = [
    "DerivedBasis",
    "MDESystem",
    "MinimalVector",
    "build_mde",
    "component_series",
    "derived_basis",
    "indicial_phi",
    "lambda_n",
    "minimal_vector",
    "ode_residual",
    "phi_j",
]


@dataclass(frozen=True)
class MDESystem:
    """The differential system for one triple, built to a fixed order.

    g0, g1, g2 are the exact coefficient series (exponent 0).  h0, h1, h2 are
    the integer caches 6N^3*G0(n), 6N^2*G1(n), 6N*G2(n) consumed by the
    recursion core.
    """

    triple: RepTriple
    order: int
    x0: int
    x4: int
    x6: int
    alpha4: Fraction
    alpha6: Fraction
    g0: QExpansion
    g1: QExpansion
    g2: QExpansion
    h0: tuple[int, ...]
    h1: tuple[int, ...]
    h2: tuple[int, ...]

    @property
    def G0(self) -> tuple[Fraction, ...]:
        return self.g0.coeffs

    @property
    def G1(self) -> tuple[Fraction, ...]:
        return self.g1.coeffs

    @property
    def G2(self) -> tuple[Fraction, ...]:
        return self.g2.coeffs

    def to_json_dict(self) -> dict:
        from .arith import rational_str

        return {
            "triple": self.triple.to_json_dict(),
            "k0": self.triple.k0,
            "x0": self.x0,
            "x4": self.x4,
            "x6": self.x6,
            "alpha4": rational_str(self.alpha4),
            "alpha6": rational_str(self.alpha6),
            "order": self.order,
            "g2": self.g2.to_json_dict(),
            "g1": self.g1.to_json_dict(),
            "g0": self.g0.to_json_dict(),
        }


@dataclass(frozen=True)
class MinimalVector:
    """Solution components with exponents A/N, B/N, C/N, leading coefficient 1."""

    components: tuple[QExpansion, QExpansion, QExpansion]

    def __post_init__(self) -> None:
        for comp in self.components:
            if comp.coeffs[0] != 1:
                raise ValueError("minimal vector components must lead with 1")

    def to_json_dict(self) -> dict:
        return {"components": [c.to_json_dict() for c in self.components]}


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise AssertionError(f"{what} is not divisible by {den}: {num}")
    return q


def build_mde(t: RepTriple, order: int) -> MDESystem:
    """Construct the system for a triple, exact through the given order."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    n = t.N
    sig = t.sigma
    x0 = 4 * sig - 2 * n
    x4 = 144 * t.omega - 3 * x0 * (x0 + 4 * n) - 8 * n * n
    x6 = x0 * x4 + x0 * (x0 + 2 * n) * (x0 + 4 * n) - 1728 * t.product
    # Structural divisibility of the integer parameters.
    assert x0 % 2 == 0 and x4 % 4 == 0 and x6 % 8 == 0, (x0, x4, x6)
    if n % 3 == 0:
        assert x0 % 3 == 0 and x4 % 3 == 0 and x6 % 9 == 0, (x0, x4, x6)

    e2, e4, e6, s22, s222, s24 = _core_int_arrays(order)
    w4 = 3 * x0 * n + 2 * n * n + x4  # N^2 * (3 k0 + 2 + 144 alpha4)
    w6 = 4 * x0 * n * n - x6  # 4 N^3 * (k0 - 432 alpha6)
    p1 = 3 * (x0 + n) * (x0 + 2 * n)  # 3 N^2 * (k0+1)(k0+2)
    p3 = x0 * (x0 + n) * (x0 + 2 * n)  # N^3 * k0 (k0+1)(k0+2)

    h2 = [18 * n - 6 * sig] + [-6 * sig * v for v in e2[1:]]
    h1 = [
        _exact_div(
            (144 * n * n if m == 0 else 0)
            - 144 * n * sig * e2[m]
            + p1 * s22[m]
            + w4 * e4[m],
            24,
            "scaled g1 coefficient",
        )
        for m in range(order + 1)
    ]
    h0 = [
        _exact_div(
            -(x0 * w4 * s24[m] + p3 * s222[m] + w6 * e6[m]),
            288,
            "scaled g0 coefficient",
        )
        for m in range(order + 1)
    ]

    return MDESystem(
        triple=t,
        order=order,
        x0=x0,
        x4=x4,
        x6=x6,
        alpha4=Fraction(x4, (12 * n) ** 2),
        alpha6=Fraction(x6, (12 * n) ** 3),
        g0=QExpansion(0, (Fraction(v, 6 * n**3) for v in h0)),
        g1=QExpansion(0, (Fraction(v, 6 * n**2) for v in h1)),
        g2=QExpansion(0, (Fraction(v, 6 * n) for v in h2)),
        h0=tuple(h0),
        h1=tuple(h1),
        h2=tuple(h2),
    )


def indicial_phi(sys: MDESystem, lam: RationalLike) -> Fraction:
    """The indicial cubic lam(lam-1)(lam-2) + G2(0) lam(lam-1) + G1(0) lam + G0(0).

    Its roots are exactly the leading exponents A/N, B/N, C/N.
    """
    lam = Fraction(lam)
    return (
        lam * (lam - 1) * (lam - 2)
        + sys.G2[0] * lam * (lam - 1)
        + sys.G1[0] * lam
        + sys.G0[0]
    )


def phi_j(sys: MDESystem, j: int, lam: RationalLike) -> Fraction:
    """The depth-j recursion polynomial G2(j) lam(lam-1) + G1(j) lam + G0(j)."""
    if j < 1:
        raise ValueError(f"phi_j needs j >= 1, got {j}")
    if j > sys.order:
        raise ValueError(f"system built to order {sys.order}, requested j = {j}")
    lam = Fraction(lam)
    return sys.G2[j] * lam * (lam - 1) + sys.G1[j] * lam + sys.G0[j]


def _roles(t: RepTriple, lead: int) -> tuple[int, int, int]:
    if lead not in (t.A, t.B, t.C):
        raise ValueError(f"lead exponent {lead} is not one of {(t.A, t.B, t.C)}")
    others = [e for e in (t.A, t.B, t.C) if e != lead]
    return lead, others[0], others[1]


def lambda_n(t: RepTriple, lead: int, n: int) -> int:
    """The integer N^2 * phi(lead/N + n) / n; never zero for a valid triple.

    Symmetric in the two non-lead exponents.
    """
    if n < 1:
        raise ValueError(f"lambda_n needs n >= 1, got {n}")
    a, b, c = _roles(t, lead)
    val = t.N * n * (t.N * n + (a - b) + (a - c)) + (a - b) * (a - c)
    # Zero would mean a resonant exponent pair, impossible for distinct
    # exponents in [0, 1).
    assert val != 0, (t, lead, n)
    return val


def component_series(sys: MDESystem, lead: int, order: Optional[int] = None) -> QExpansion:
    """One Frobenius solution q^(lead/N) (1 + sum a(n) q^n) of the system.

    a(n) = -(1 / phi(lead/N + n)) * sum_{j<n} a(j) phi_{n-j}(lead/N + j),
    evaluated entirely in integer arithmetic: with c_k = 6N k lambda(k) the
    unreduced numerators A_n over denominators d_n = c_1 ... c_n obey a Horner
    recurrence, and each coefficient reduces once at the end.
    """
    t = sys.triple
    T = sys.order if order is None else order
    if T > sys.order:
        raise ValueError(f"system built to order {sys.order}, requested {T}")
    n_level = t.N
    h0, h1, h2 = sys.h0, sys.h1, sys.h2
    u = [lead + j * n_level for j in range(T + 1)]
    uu = [v * (v - n_level) for v in u]
    c = [0] + [6 * n_level * k * lambda_n(t, lead, k) for k in range(1, T + 1)]
    anum = [1]
    coeffs = [Fraction(1)]
    dprod = 1
    for n in range(1, T + 1):
        s = 0
        for j in range(n):
            m = n - j
            s = s * c[j] + anum[j] * (h2[m] * uu[j] + h1[m] * u[j] + h0[m])
        anum.append(-s)
        dprod *= c[n]
        coeffs.append(Fraction(-s, dprod))
    return QExpansion(Fraction(lead, n_level), coeffs)


def minimal_vector(sys: MDESystem, order: Optional[int] = None) -> MinimalVector:
    """All three solution components, one recursion per leading exponent."""
    t = sys.triple
    return MinimalVector(
        tuple(component_series(sys, lead, order) for lead in (t.A, t.B, t.C))
    )


def _scaled_theta(f: QExpansion, depth: int) -> QExpansion:
    """q^depth * (d/dq)^depth applied to f: multiply the coefficient of
    q^(r+n) by the falling factorial (r+n)(r+n-1)...(r+n-depth+1)."""
    r = f.exponent
    out = []
    for n, cn in enumerate(f.coeffs):
        factor = Fraction(1)
        for i in range(depth):
            factor *= r + n - i
        out.append(factor * cn)
    return QExpansion(r, out)


def ode_residual(sys: MDESystem, f: QExpansion, order: Optional[int] = None) -> QExpansion:
    """Exact residual q^3 f''' + g2 q^2 f'' + g1 q f' + g0 f through the order.

    Identically zero for recursion output; the coefficient at q^(r+n) of the
    residual of a perturbed series isolates phi(r + n) times the perturbation.
    """
    cap = min(f.order, sys.order)
    T = cap if order is None else order
    if T > cap:
        raise ValueError(f"residual valid to order {cap}, requested {T}")
    g = f.truncate(T)
    return (
        _scaled_theta(g, 3)
        + sys.g2 * _scaled_theta(g, 2)
        + sys.g1 * _scaled_theta(g, 1)
        + sys.g0 * g
    )


@dataclass(frozen=True)
class DerivedBasis:
    """F0 and its two modular derivatives, with the leading-coefficient data.

    matrix[i][j] is the leading coefficient of the j-th derivative of the i-th
    component, equal to the product over k < j of (r_i - (k0 + 2k)/12); its
    determinant is the Vandermonde product of the leading exponents.
    """

    f0: MinimalVector
    first: tuple[QExpansion, QExpansion, QExpansion]
    second: tuple[QExpansion, QExpansion, QExpansion]
    matrix: tuple[tuple[Fraction, Fraction, Fraction], ...]
    determinant: Fraction
    vandermonde: Fraction


def derived_basis(
    sys: MDESystem, f0: MinimalVector, order: Optional[int] = None
) -> DerivedBasis:
    """Apply the weight-k0 and weight-(k0+2) derivatives to every component."""
    k0 = sys.triple.k0
    cap = min(min(c.order for c in f0.components), sys.order)
    T = cap if order is None else order
    if T > cap:
        raise ValueError(f"basis valid to order {cap}, requested {T}")
    first = tuple(modular_derivative(c, k0, T) for c in f0.components)
    second = tuple(modular_derivative(c, k0 + 2, T) for c in first)
    matrix = tuple(
        (f0.components[i].coeffs[0], first[i].coeffs[0], second[i].coeffs[0])
        for i in range(3)
    )
    m = matrix
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    r = sys.triple.exponents
    vandermonde = (r[1] - r[0]) * (r[2] - r[0]) * (r[2] - r[1])
    return DerivedBasis(
        f0=f0,
        first=first,
        second=second,
        matrix=matrix,
        determinant=det,
        vandermonde=vandermonde,
    )
