"""Property checks shared by the hypothesis suites and the acceptance run."""

from fractions import Fraction as F
import itertools

from bielliptic.covering import QuadricIntersectionModel
from bielliptic.ecq import ShortWeierstrassCurve, ec_add, ec_mul, point
from bielliptic.errors import DegenerateInput, InvalidInput, ResourceLimit
from bielliptic.exact import Poly, resultant, square_class
from bielliptic.localsolve import (
    Status,
    _minor_valuation,
    _Pair,
    hensel_ok,
    quadric_intersection_locally_soluble,
    verify_witness,
)
from bielliptic.numfield import QuarticAlgebra, nf_mul, nf_norm
from bielliptic.surface import SurfaceModel, search_rational_points

# (p, q) pairs with Res = +-1 and both positive definite
VALID_PQ = [
    (Poly.from_high(1, 0, 1), Poly.from_high(1, 0, 2)),
    (Poly.from_high(1, 0, 1), Poly.from_high(1, 1, 1)),
    (Poly.from_high(1, 0, 1), Poly.from_high(1, -1, 1)),
    (Poly.from_high(1, 1, 1), Poly.from_high(1, 0, 1)),
]


def resultant_symmetry(f: Poly, g: Poly):
    assert resultant(f, g) == (-1) ** (f.degree * g.degree) * resultant(g, f)


def norm_multiplicative(modulus: Poly, u, v):
    try:
        K = QuarticAlgebra(modulus)
    except InvalidInput:
        return "skipped"
    a, b = K.element(u), K.element(v)
    assert nf_norm(nf_mul(a, b)) == nf_norm(a) * nf_norm(b)
    return "checked"


def curve_through(x1, y1, x2, y2):
    """The short Weierstrass curve through two affine points with distinct x."""
    A = (y1 * y1 - y2 * y2 - x1**3 + x2**3) / (x1 - x2)
    B = y1 * y1 - x1**3 - A * x1
    return ShortWeierstrassCurve(A, B)


def group_associative(x1, y1, x2, y2, k: int):
    if x1 == x2:
        return "skipped"
    try:
        E = curve_through(F(x1), F(y1), F(x2), F(y2))
    except DegenerateInput:
        return "skipped"
    P, Q = point(x1, y1), point(x2, y2)
    R = ec_add(E, ec_mul(E, k, P), Q)
    assert ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R))
    assert ec_add(E, P, ec_mul(E, -1, P)) is None
    return "checked"


def square_class_invariant(r: F, s: F):
    assert square_class(r * s * s) == square_class(r)
    assert square_class(r) == square_class(square_class(r))


def search_monotone(g: Poly, pq_index: int, H: int, H2: int):
    p, q = VALID_PQ[pq_index]
    try:
        S = SurfaceModel(g, p, q)
        small = search_rational_points(S, H)
    except InvalidInput:
        return "skipped"
    big = search_rational_points(S, H2)
    assert set(small) <= set(big)
    return "checked"


def naive_liftable(QI, p: int, k: int):
    pair = _Pair(QI)
    pk = p**k
    for v in itertools.product(range(pk), repeat=4):
        if all(x % p == 0 for x in v):
            continue
        fa, fb, ga, gb = pair.values(list(v))
        if fa % pk or fb % pk:
            continue
        t, _ = _minor_valuation(ga, gb, p, k)
        if hensel_ok(k, t, p):
            return v
    return None


def residue_tree_deterministic(M1, M2, p: int, depth_cap: int = 12):
    try:
        QI = QuadricIntersectionModel(M1, M2)
    except InvalidInput:
        return "skipped"
    if not QI.is_smooth():
        return "skipped"
    try:
        first = quadric_intersection_locally_soluble(QI, p, depth_cap)
    except ResourceLimit:
        try:
            quadric_intersection_locally_soluble(QI, p, depth_cap)
        except ResourceLimit:
            return "resource-limited"
        raise AssertionError("resource limit was not reproducible")
    second = quadric_intersection_locally_soluble(QI, p, depth_cap)
    assert first == second
    assert first.witness == second.witness
    if first.status is Status.SOLUBLE:
        assert verify_witness(QI, first.witness)
    else:
        k = 3 if p == 2 else 2
        assert naive_liftable(QI, p, k) is None
    return first.status.value
