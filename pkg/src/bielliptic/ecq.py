"""Elliptic curves y^2 = x^3 + A x + B over Q.

Points are ``None`` (the point at infinity) or a pair of Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DegenerateInput, InvalidInput
from .exact import (
    Poly,
    as_fraction,
    divisors,
    gcd_all,
    integer_root,
    is_prime,
    legendre,
    rational_root,
    rational_roots,
)

Point = Optional[tuple[Fraction, Fraction]]
INFINITY: Point = None


@dataclass(frozen=True)
class ShortWeierstrassCurve:
    A: Fraction
    B: Fraction

    def __init__(self, A, B):
        object.__setattr__(self, "A", as_fraction(A))
        object.__setattr__(self, "B", as_fraction(B))
        if self.discriminant_core() == 0:
            raise DegenerateInput(f"singular curve y^2 = x^3 + {A}x + {B}")

    def discriminant_core(self) -> Fraction:
        """4A^3 + 27B^2; the discriminant is -16 times this."""
        return 4 * self.A**3 + 27 * self.B**2

    @property
    def discriminant(self) -> Fraction:
        return -16 * self.discriminant_core()

    def rhs(self) -> Poly:
        return Poly((self.B, self.A, 0, 1))

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return y * y == x**3 + self.A * x + self.B

    def is_integral(self) -> bool:
        return self.A.denominator == 1 and self.B.denominator == 1

    def __str__(self):
        return f"y^2 = x^3 + ({self.A})x + ({self.B})"


def point(x, y) -> tuple[Fraction, Fraction]:
    return as_fraction(x), as_fraction(y)


def ec_neg(P: Point) -> Point:
    return None if P is None else (P[0], -P[1])


def ec_add(E: ShortWeierstrassCurve, P: Point, Q: Point) -> Point:
    for R in (P, Q):
        if not E.contains(R):
            raise InvalidInput(f"{R} is not on {E}")
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        if y1 == -y2:
            return None
        lam = (3 * x1 * x1 + E.A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def ec_mul(E: ShortWeierstrassCurve, n: int, P: Point) -> Point:
    if n < 0:
        return ec_mul(E, -n, ec_neg(P))
    acc: Point = None
    while n:
        if n & 1:
            acc = ec_add(E, acc, P)
        P = ec_add(E, P, P)
        n >>= 1
    return acc


def rational_two_torsion(E: ShortWeierstrassCurve) -> list[tuple[Fraction, Fraction]]:
    return [(r, Fraction(0)) for r in sorted(set(rational_roots(E.rhs())))]


def count_points_mod_p(E: ShortWeierstrassCurve, p: int) -> int:
    """#E(F_p) including infinity, by summing Legendre symbols over x."""
    if not is_prime(p) or p == 2:
        raise InvalidInput("p must be an odd prime")
    if any(c.denominator % p == 0 for c in (E.A, E.B)) or (6 * E.discriminant_core()) % p == 0:
        raise InvalidInput(f"{E} has bad reduction at {p}")
    A = E.A.numerator * pow(E.A.denominator, -1, p) % p
    B = E.B.numerator * pow(E.B.denominator, -1, p) % p
    return 1 + sum(1 + legendre(x * x * x + A * x + B, p) for x in range(p))


@dataclass
class TorsionCertificate:
    """Outcome of the trivial-torsion test.

    ``status`` is ``"trivial"``, ``"nontrivial"`` or ``"inconclusive"``.
    """

    status: str
    routes: dict[str, dict] = field(default_factory=dict)
    witness: Point = None

    @property
    def trivial(self) -> bool:
        return self.status == "trivial"

    @property
    def route(self) -> Optional[str]:
        ok = [name for name, r in self.routes.items() if r.get("proves_trivial")]
        return ok[0] if ok else None


def good_primes_for_torsion(E: ShortWeierstrassCurve, count: int = 5) -> list[int]:
    bad = 6 * E.discriminant_core()
    primes, p = [], 3
    need_one_mod_3 = 2 if E.A == 0 else 0
    while len(primes) < count or sum(1 for q in primes if q % 3 == 1) < need_one_mod_3:
        p += 2
        if is_prime(p) and bad % p != 0:
            primes.append(p)
    return primes


def _order_if_torsion(E: ShortWeierstrassCurve, P: Point) -> Optional[int]:
    """Order of P when it is torsion; None once a multiple has non-integral coordinates."""
    Q, n = P, 1
    while Q is not None:
        if Q[0].denominator != 1 or Q[1].denominator != 1:
            return None
        Q = ec_add(E, Q, P)
        n += 1
    return n


def torsion_trivial_certificate(E: ShortWeierstrassCurve) -> TorsionCertificate:
    """Certify E(Q)_tors = {O} by reduction counts and by Lutz-Nagell exhaustion."""
    if not E.is_integral():
        raise InvalidInput("torsion certificate needs integral A, B")
    routes: dict[str, dict] = {}

    primes = good_primes_for_torsion(E)
    counts = {p: count_points_mod_p(E, p) for p in primes}
    g = gcd_all(counts.values())
    routes["reduction_gcd"] = {"counts": counts, "gcd": g, "proves_trivial": g == 1}

    two_torsion = rational_two_torsion(E)
    if two_torsion:
        routes["lutz_nagell"] = {"two_torsion": two_torsion, "proves_trivial": False}
        return TorsionCertificate("nontrivial", routes, two_torsion[0])

    D = int(E.discriminant_core())
    rhs = E.rhs()
    ys = [y for y in (integer_root(d, 2) for d in divisors(D)) if y is not None]
    examined = []
    for y in ys:
        xs = [r for r in rational_roots(rhs - Poly((y * y,))) if r.denominator == 1]
        for x in xs:
            P = (x, Fraction(y))
            order = _order_if_torsion(E, P)
            examined.append({"point": P, "order": order})
            if order is not None:
                routes["lutz_nagell"] = {"examined": examined, "proves_trivial": False}
                return TorsionCertificate("nontrivial", routes, P)
    routes["lutz_nagell"] = {
        "y_values_checked": ys,
        "examined": examined,
        "proves_trivial": True,
    }
    return TorsionCertificate("trivial", routes)


def curves_isomorphic_over_Q(E1: ShortWeierstrassCurve, E2: ShortWeierstrassCurve) -> bool:
    """Whether A2 = u^4 A1 and B2 = u^6 B1 for some nonzero rational u."""
    A1, B1, A2, B2 = E1.A, E1.B, E2.A, E2.B
    if (A1 == 0) != (A2 == 0) or (B1 == 0) != (B2 == 0):
        return False
    if A1 == 0:
        return rational_root(B2 / B1, 6) is not None
    if B1 == 0:
        return rational_root(A2 / A1, 4) is not None
    u2 = (B2 * A1) / (B1 * A2)
    if rational_root(u2, 2) is None:
        return False
    return A2 == u2**2 * A1 and B2 == u2**3 * B1


def isomorphism_scale(E1: ShortWeierstrassCurve, E2: ShortWeierstrassCurve) -> Optional[Fraction]:
    """u^2 with (A2, B2) = (u^4 A1, u^6 B1), when the curves are isomorphic."""
    if not curves_isomorphic_over_Q(E1, E2):
        return None
    if E1.A == 0:
        u = rational_root(E2.B / E1.B, 6)
        return u * u
    if E1.B == 0:
        return rational_root(E2.A / E1.A, 4) ** 2
    return (E2.B * E1.A) / (E1.B * E2.A)


def hasse_bound_ok(E: ShortWeierstrassCurve, p: int) -> bool:
    n = count_points_mod_p(E, p)
    return (n - p - 1) ** 2 <= 4 * p


__all__ = [
    "INFINITY",
    "ShortWeierstrassCurve",
    "TorsionCertificate",
    "count_points_mod_p",
    "curves_isomorphic_over_Q",
    "ec_add",
    "ec_mul",
    "ec_neg",
    "isomorphism_scale",
    "point",
    "rational_two_torsion",
    "torsion_trivial_certificate",
]
