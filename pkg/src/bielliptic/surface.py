"""The bielliptic surface y^2 = g(t) p(x), z^2 = g(t) q(x).

Validation of the defining data, the +/- twist decomposition of rational
points, a height-bounded point search and the assembled adelic verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .covering import (
    QuadricIntersectionModel,
    QuarticCurveModel,
    build_four_covering,
    projective_invariants_match,
    pencil_determinant,
    resolvent_jacobian,
    same_pencil,
)
from .ecq import ShortWeierstrassCurve, rational_two_torsion, torsion_trivial_certificate
from .errors import InvalidInput, TheoremViolation
from .exact import (
    Poly,
    discriminant,
    is_irreducible_deg_le_4,
    is_prime,
    is_rational_square,
    rational_root,
    resultant,
    square_class,
    squarefree_part,
    valuation,
)
from .localsolve import Status, everywhere_locally_soluble, overall_status
from .numfield import QuarticAlgebraElement

CONFIRMED = "CONFIRMED-MODULO-ASSUMPTIONS"
NOT_ESTABLISHED = "NOT-ESTABLISHED"
RANK_ZERO = "rank J(Q) = 0"


@dataclass(frozen=True)
class SurfaceModel:
    g: Poly
    p: Poly
    q: Poly

    def quartic_model(self) -> QuarticCurveModel:
        if self.g.degree != 4 or self.g.coeff(3) != 0:
            raise InvalidInput("g must be a quartic without cubic term")
        return QuarticCurveModel(self.g.coeff(4), self.g.coeff(2), self.g.coeff(1), self.g.coeff(0))


@dataclass(frozen=True)
class SurfacePoint:
    """Affine point of the surface; ``None`` in t or x marks the point at infinity there."""

    t: Optional[Fraction]
    x: Optional[Fraction]
    y: Optional[Fraction] = None
    z: Optional[Fraction] = None
    place: object = "global"


@dataclass(frozen=True)
class TwistSelector:
    sign: int
    square_class: int = field(default=1, compare=False)


@dataclass
class ValidationReport:
    items: dict[str, tuple[bool, str]]

    @property
    def ok(self) -> bool:
        return all(passed for passed, _ in self.items.values())

    def failures(self) -> list[str]:
        return [name for name, (passed, _) in self.items.items() if not passed]


class DecompositionObstruction(InvalidInput):
    def __init__(self, square_class: int):
        super().__init__(f"g(t) has square class {square_class}, not +1 or -1")
        self.square_class = square_class


def _integral(poly: Poly) -> bool:
    return all(c.denominator == 1 for c in poly.coeffs)


def validate_surface(S: SurfaceModel) -> ValidationReport:
    items: dict[str, tuple[bool, str]] = {}
    items["g_quartic_integral"] = (S.g.degree == 4 and _integral(S.g), f"deg g = {S.g.degree}")
    smooth = S.g.degree == 4 and discriminant(S.g) != 0
    items["g_smooth"] = (smooth, "disc(g) != 0" if smooth else "g has a repeated root")
    for name, f in (("p", S.p), ("q", S.q)):
        monic = f.degree == 2 and f.lc == 1 and _integral(f)
        items[f"{name}_monic_integral_quadratic"] = (monic, repr(f))
        pos = f.degree == 2 and f.lc > 0 and discriminant(f) < 0
        items[f"{name}_positive_definite"] = (pos, f"disc = {discriminant(f) if f.degree == 2 else 'n/a'}")
    res = resultant(S.p, S.q) if not (S.p.is_zero() and S.q.is_zero()) else Fraction(0)
    items["resultant_unit"] = (abs(res) == 1, f"Res(p, q) = {res}")
    return ValidationReport(items)


def require_valid(S: SurfaceModel):
    rep = validate_surface(S)
    if not rep.ok:
        raise InvalidInput("invalid surface: " + ", ".join(rep.failures()))


def on_surface(S: SurfaceModel, P: SurfacePoint) -> bool:
    if P.t is None or P.x is None:
        return True
    gt = S.g(P.t)
    return P.y**2 == gt * S.p(P.x) and P.z**2 == gt * S.q(P.x)


def twist_selector(S: SurfaceModel, P: SurfacePoint) -> TwistSelector:
    """Sign of the square class of g(t); for local points also checks v_p(g(t)) is even."""
    if P.y == 0 or P.z == 0 or P.y is None or P.z is None:
        raise InvalidInput("boundary point (yz = 0) has no twist selector")
    gt = S.g(P.t)
    if isinstance(P.place, int) and is_prime(P.place):
        if valuation(gt, P.place) % 2:
            raise TheoremViolation(f"odd {P.place}-adic valuation of g(t) at a local point")
    elif not on_surface(S, P):
        raise InvalidInput("point is not on the surface")
    cls = square_class(gt)
    return TwistSelector(1 if cls > 0 else -1, cls)


@dataclass(frozen=True)
class TwistLift:
    sign: int
    curve_point: tuple[Fraction, Fraction]  # (t, u) on u^2 = sign * g(t)
    d_point: tuple[Fraction, Fraction, Fraction]  # (x, Y, Z) on Y^2 = sign p(x), Z^2 = sign q(x)


def lift_to_twist(S: SurfaceModel, P: SurfacePoint) -> TwistLift:
    if not on_surface(S, P) or P.t is None or P.x is None:
        raise InvalidInput("need an affine rational point of the surface")
    if P.y == 0 or P.z == 0:
        raise InvalidInput("boundary point (yz = 0)")
    gt = S.g(P.t)
    cls = square_class(gt)
    if cls not in (1, -1):
        raise DecompositionObstruction(cls)
    m = rational_root(gt / cls, 2)
    cpt = (P.t, m)
    dpt = (P.x, P.y / m, P.z / m)
    if m * m != cls * gt or dpt[1] ** 2 != cls * S.p(P.x) or dpt[2] ** 2 != cls * S.q(P.x):
        raise TheoremViolation("lifted point fails the curve equations")
    return TwistLift(cls, cpt, dpt)


def quotient_image(lift: TwistLift) -> SurfacePoint:
    """Map a point of C x D (or the twisted pair) back to the surface."""
    t, u = lift.curve_point
    x, Y, Z = lift.d_point
    return SurfacePoint(t, x, u * Y, u * Z)


def _min_max_of_pair(p: Poly, q: Poly) -> Fraction:
    """min over real x of max(p(x), q(x)) for two monic quadratics."""
    cands = [-p.coeff(1) / 2, -q.coeff(1) / 2]
    lin = p - q
    if lin.degree == 1:
        cands.append(-lin.coeff(0) / lin.coeff(1))
    return min(max(p(x), q(x)) for x in cands)


def minus_twist_real_check(S: SurfaceModel) -> bool:
    """True iff y^2 = -p(x), z^2 = -q(x) has no real point (exact)."""
    for f in (S.p, S.q):
        if f.degree != 2 or f.lc <= 0:
            raise InvalidInput("p and q must be quadratics with positive leading term")
    if discriminant(S.p) < 0 or discriminant(S.q) < 0:
        return True
    # both indefinite: a real point needs p(x) <= 0 and q(x) <= 0 simultaneously
    return _min_max_of_pair(S.p, S.q) > 0


# ---------------------------------------------------------------------------
# rational point search


def rationals_of_height(H: int) -> list[Fraction]:
    """All n/d in lowest terms with |n| <= H and 1 <= d <= H."""
    out = {Fraction(0)}
    for d in range(1, H + 1):
        for n in range(1, H + 1):
            if math.gcd(n, d) == 1:
                out.add(Fraction(n, d))
                out.add(Fraction(-n, d))
    return sorted(out)


def height(r: Optional[Fraction]) -> int:
    if r is None:
        return 1
    return max(abs(r.numerator), r.denominator)


def _class_or_zero(r: Fraction) -> int:
    return 0 if r == 0 else squarefree_part(r.numerator * r.denominator)


def _class_at_infinity(f: Poly) -> int:
    """Square class of f at infinity for even degree: that of its leading coefficient."""
    return _class_or_zero(f.lc)


def _sqrt(r: Fraction) -> Fraction:
    return rational_root(r, 2)


def search_rational_points(S: SurfaceModel, H: int) -> list[SurfacePoint]:
    """Every point with t, x in P^1(Q) of height <= H (infinity included).

    A pair (t, x) lies under a point iff g(t) p(x) and g(t) q(x) are both
    squares, i.e. g(t) = 0, or g(t), p(x), q(x) share a square class, or
    g(t) p(x) = 0 = g(t) q(x) fails while one of p(x), q(x) vanishes and the
    other matches g(t).  Points come with y, z >= 0.
    """
    if not isinstance(H, int) or H < 1:
        raise InvalidInput("height bound must be a positive integer")
    rats = rationals_of_height(H)
    ts: list[Optional[Fraction]] = rats + [None]
    xs: list[Optional[Fraction]] = rats + [None]

    def gclass(t):
        return _class_at_infinity(S.g) if t is None else _class_or_zero(S.g(t))

    def pq_classes(x):
        if x is None:
            return _class_at_infinity(S.p), _class_at_infinity(S.q)
        return _class_or_zero(S.p(x)), _class_or_zero(S.q(x))

    by_class: dict[int, list] = {}
    zeros_t = []
    for t in ts:
        c = gclass(t)
        if c == 0:
            zeros_t.append(t)
        else:
            by_class.setdefault(c, []).append(t)

    found = []
    for x in xs:
        cp, cq = pq_classes(x)
        if cp and cq and cp != cq:
            continue
        cls = cp or cq
        if cls == 0:
            tlist = [t for lst in by_class.values() for t in lst]
        else:
            tlist = by_class.get(cls, [])
        for t in tlist + zeros_t:
            found.append(_make_point(S, t, x))
    found.sort(key=lambda P: (max(height(P.t), height(P.x)), _key(P.t), _key(P.x)))
    return found


def _key(r):
    return (1, Fraction(0)) if r is None else (0, r)


def _make_point(S: SurfaceModel, t, x) -> SurfacePoint:
    if t is None or x is None:
        return SurfacePoint(t, x)
    gt = S.g(t)
    return SurfacePoint(t, x, _sqrt(gt * S.p(x)), _sqrt(gt * S.q(x)))


def brute_force_points(S: SurfaceModel, H: int) -> list[tuple]:
    """Independent O(N^2) scan over affine (t, x); used to cross-check the search."""
    rats = rationals_of_height(H)
    out = []
    for t in rats:
        gt = S.g(t)
        for x in rats:
            if is_rational_square(gt * S.p(x)) and is_rational_square(gt * S.q(x)):
                out.append((t, x))
    return out


def quartic_points(g: Poly, H: int) -> list[Optional[Fraction]]:
    """x of height <= H (None for infinity) with g(x) a rational square."""
    out = [x for x in rationals_of_height(H) if is_rational_square(g(x))]
    if is_rational_square(g.lc):
        out.append(None)
    return out


# ---------------------------------------------------------------------------
# adelic verdict


@dataclass
class AdelicItem:
    key: str
    status: str  # PASS | FAIL | ASSUMED | UNKNOWN
    detail: dict = field(default_factory=dict)


@dataclass
class AdelicVerdict:
    verdict: str
    items: list[AdelicItem]
    assumptions: list[str]
    failing: list[str]


def _integral_model(E: ShortWeierstrassCurve) -> ShortWeierstrassCurve:
    u = math.lcm(E.A.denominator, E.B.denominator)
    return ShortWeierstrassCurve(E.A * u**4, E.B * u**6)


def adelic_verdict(S: SurfaceModel, fourcover: QuadricIntersectionModel,
                   assume_rank_zero: bool = True, eps: QuarticAlgebraElement | None = None,
                   height_bound: int = 50, depth_cap: int | None = None) -> AdelicVerdict:
    items: list[AdelicItem] = []

    def add(key, ok, **detail):
        items.append(AdelicItem(key, "PASS" if ok else "FAIL", detail))

    rep = validate_surface(S)
    add("surface_valid", rep.ok, failures=rep.failures())
    add("minus_twist_no_real_point", rep.ok and minus_twist_real_check(S))

    # (1) D has its rational points at infinity when p and q are monic
    add("D_has_rational_point", is_rational_square(S.p.lc) and is_rational_square(S.q.lc),
        point="x = infinity, y/x = z/x = 1")

    C = S.quartic_model()
    if eps is not None:
        ok = same_pencil(build_four_covering(C, eps), fourcover)
        add("fourcover_lifts_C", ok, via="same pencil as the eps construction")
    else:
        ok = projective_invariants_match(pencil_determinant(fourcover), C.homogenized())
        add("fourcover_lifts_C", ok, via="matching (I^3 : J^2)")

    # (2) everywhere local solubility of the 4-covering
    verdicts = everywhere_locally_soluble(fourcover, depth_cap=depth_cap)
    status = overall_status(verdicts)
    add("fourcover_everywhere_locally_soluble", status is Status.SOLUBLE,
        places={str(v.place): v.status.value for v in verdicts})

    # (3) evidence that C(Q) is empty
    add("g_irreducible", is_irreducible_deg_le_4(S.g))
    E = _integral_model(resolvent_jacobian(C))
    add("jacobian_no_rational_two_torsion", not rational_two_torsion(E), curve=str(E))
    cert = torsion_trivial_certificate(E)
    add("jacobian_torsion_trivial", cert.trivial, route=cert.route)
    pts = quartic_points(S.g, height_bound)
    add("no_quartic_point_small_height", not pts, height=height_bound, found=[str(x) for x in pts])
    if assume_rank_zero:
        items.append(AdelicItem("jacobian_rank_zero", "ASSUMED", {"assumption": RANK_ZERO}))
    else:
        items.append(AdelicItem("jacobian_rank_zero", "FAIL", {"reason": "rank-0 input withheld"}))

    failing = [it.key for it in items if it.status == "FAIL"]
    assumptions = [it.detail["assumption"] for it in items if it.status == "ASSUMED"]
    # (4) C(Q) empty makes [C'] of exact order 4 in Sha, whence X(A)^Br nonempty while X(Q) is empty
    verdict = NOT_ESTABLISHED if failing else CONFIRMED
    return AdelicVerdict(verdict, items, assumptions, failing)


def default_surface() -> SurfaceModel:
    from . import instance

    return SurfaceModel(instance.quartic_model().quartic(), instance.DEFAULT_P, instance.DEFAULT_Q)

