"""Randomized invariants; every suite runs at least 100 generated cases."""

from fractions import Fraction as F

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import property_checks as pc
from bielliptic.covering import (
    BinaryQuarticForm,
    QuadricIntersectionModel,
    QuarticCurveModel,
    binary_quartic_invariants,
    build_four_covering,
    pencil_determinant,
    projective_invariants_match,
)
from bielliptic.ecq import ShortWeierstrassCurve, count_points_mod_p, curves_isomorphic_over_Q, hasse_bound_ok
from bielliptic.ecq import rational_two_torsion, torsion_trivial_certificate
from bielliptic.errors import DegenerateInput
from bielliptic.exact import Poly, discriminant, is_rational_square, rational_root, rational_roots, valuation
from bielliptic.numfield import QuarticAlgebra, nf_mul, nf_norm
from bielliptic.surface import SurfaceModel, SurfacePoint, lift_to_twist, minus_twist_real_check
from bielliptic.surface import on_surface, quotient_image, rationals_of_height, twist_selector

SETTINGS = settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow,
                                                                               HealthCheck.filter_too_much])

small_int = st.integers(-9, 9)
nonzero = st.integers(-9, 9).filter(bool)
rational = st.builds(F, st.integers(-30, 30), st.integers(1, 12))
nonzero_rational = st.builds(F, nonzero, st.integers(1, 12))


def poly_of_degree(lo, hi):
    return st.lists(rational, min_size=lo, max_size=hi).flatmap(
        lambda cs: nonzero_rational.map(lambda lead: Poly(list(cs) + [lead])))


monic_quartic = st.tuples(small_int, small_int, small_int, small_int).map(
    lambda c: Poly((c[0], c[1], c[2], c[3], 1)))
depressed_quartic = st.tuples(small_int, small_int, small_int).map(lambda c: Poly((c[0], c[1], c[2], 0, 1)))
coords = st.tuples(rational, rational, rational, rational)
sym4 = st.lists(st.integers(-3, 3), min_size=10, max_size=10).map(
    lambda v: [[v[{(0, 0): 0, (0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 1): 4, (1, 2): 5, (1, 3): 6,
                   (2, 2): 7, (2, 3): 8, (3, 3): 9}[tuple(sorted((i, j)))]] for j in range(4)] for i in range(4)])


# exact-core

@SETTINGS
@given(poly_of_degree(1, 4), poly_of_degree(1, 4))
def test_resultant_symmetry(f, g):
    pc.resultant_symmetry(f, g)


@SETTINGS
@given(poly_of_degree(2, 4), nonzero_rational)
def test_discriminant_scaling(f, c):
    n = f.degree
    assert discriminant(f * Poly((c,))) == c ** (2 * n - 2) * discriminant(f)


@SETTINGS
@given(nonzero_rational, nonzero_rational)
def test_square_class_well_defined(r, s):
    pc.square_class_invariant(r, s)


@SETTINGS
@given(nonzero_rational, nonzero_rational, st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_rules(a, b, p):
    assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)
    if valuation(a, p) != valuation(b, p) and a + b:
        assert valuation(a + b, p) == min(valuation(a, p), valuation(b, p))


@SETTINGS
@given(st.lists(rational, min_size=1, max_size=4), nonzero_rational)
def test_rational_roots_of_products(roots, lead):
    f = Poly((lead,))
    for r in roots:
        f = f * Poly((-r, 1))
    found = rational_roots(f)
    assert sorted(found) == sorted(roots)
    assert all(f(r) == 0 for r in found)


# numfield

@SETTINGS
@given(monic_quartic, coords, coords)
def test_norm_multiplicative(mod, u, v):
    assume(pc.norm_multiplicative(mod, u, v) == "checked")


@SETTINGS
@given(monic_quartic, rational)
def test_norm_of_scalar(mod, c):
    assume(discriminant(mod) != 0)
    K = QuarticAlgebra(mod)
    assert nf_norm(K.element((c, 0, 0, 0))) == c**4


@SETTINGS
@given(monic_quartic, coords, coords)
def test_mul_matches_schoolbook(mod, u, v):
    assume(discriminant(mod) != 0)
    K = QuarticAlgebra(mod)
    a, b = K.element(u), K.element(v)
    _, r = (Poly(u) * Poly(v)).divmod(mod)
    assert nf_mul(a, b).coordinates == tuple(r.coeff(i) for i in range(4))


# ecq

@SETTINGS
@given(small_int, small_int, small_int, small_int, st.integers(-3, 3))
def test_group_law_associative(x1, y1, x2, y2, k):
    assume(pc.group_associative(x1, y1, x2, y2, k) == "checked")


@SETTINGS
@given(st.integers(-20, 20), st.integers(-20, 20), st.sampled_from([5, 7, 11, 13, 17, 19, 23, 29, 31]))
def test_hasse_bound(A, B, p):
    assume(4 * A**3 + 27 * B**2 != 0)
    E = ShortWeierstrassCurve(A, B)
    assume((4 * A**3 + 27 * B**2) % p != 0)
    assert hasse_bound_ok(E, p)
    assert 1 <= count_points_mod_p(E, p)


@SETTINGS
@given(st.integers(-12, 12), st.integers(-12, 12))
def test_torsion_never_ignores_two_torsion(A, B):
    assume(4 * A**3 + 27 * B**2 != 0)
    E = ShortWeierstrassCurve(A, B)
    cert = torsion_trivial_certificate(E)
    if rational_two_torsion(E):
        assert not cert.trivial


@SETTINGS
@given(st.integers(-12, 12), st.integers(-12, 12), nonzero_rational, nonzero_rational)
def test_isomorphism_is_equivalence(A, B, u, w):
    assume(4 * A**3 + 27 * B**2 != 0)
    E1 = ShortWeierstrassCurve(A, B)
    E2 = ShortWeierstrassCurve(u**4 * A, u**6 * B)
    E3 = ShortWeierstrassCurve(w**4 * E2.A, w**6 * E2.B)
    assert curves_isomorphic_over_Q(E1, E1)
    assert curves_isomorphic_over_Q(E1, E2) and curves_isomorphic_over_Q(E2, E1)
    assert curves_isomorphic_over_Q(E1, E3)


# covering

@SETTINGS
@given(depressed_quartic, coords, st.integers(1, 3))
def test_four_covering_invariants(h, u, s):
    assume(discriminant(h) != 0)
    K = QuarticAlgebra(h)
    eps = K.element(u)
    N = nf_norm(eps)
    assume(N != 0)
    a = N * s * s
    C = QuarticCurveModel(a, a * h.coeff(2), a * h.coeff(1), a * h.coeff(0))
    try:
        QI = build_four_covering(C, C.algebra().element(u))
    except DegenerateInput:
        assume(False)
    assert projective_invariants_match(pencil_determinant(QI), C.homogenized())


@SETTINGS
@given(sym4, sym4, st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_pencil_base_change(M1, M2, m):
    p, q, r, s = m
    assume(p * s - q * r != 0)
    P = QuadricIntersectionModel(M1, M2)
    N1 = [[p * a + r * b for a, b in zip(x, y)] for x, y in zip(M1, M2)]
    N2 = [[q * a + s * b for a, b in zip(x, y)] for x, y in zip(M1, M2)]
    # det(l N1 + m N2) = det((p l + q m) M1 + (r l + s m) M2)
    assert pencil_determinant(QuadricIntersectionModel(N1, N2)) == pencil_determinant(P).substitute([[p, q], [r, s]])


@SETTINGS
@given(st.tuples(rational, small_int, small_int, small_int, small_int),
       st.tuples(nonzero, nonzero))
def test_binary_invariant_weights(cs, uv):
    Fm = BinaryQuarticForm(cs)
    u, v = uv
    I, J = binary_quartic_invariants(Fm)
    G = Fm.substitute([[u, 0], [0, v]])
    d = u * v
    assert binary_quartic_invariants(G) == (d**4 * I, d**6 * J)


# localsolve

@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow,
                                                                  HealthCheck.filter_too_much])
@given(sym4, sym4, st.sampled_from([2, 3, 5]))
def test_residue_tree_determinism(M1, M2, p):
    out = pc.residue_tree_deterministic(M1, M2, p)
    assume(out != "skipped")


# surface

@SETTINGS
@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), nonzero),
       st.integers(0, len(pc.VALID_PQ) - 1), st.integers(1, 3), st.integers(0, 2))
def test_search_monotone(cs, pq, H, extra):
    g = Poly(cs)
    assume(discriminant(g) != 0)
    assume(pc.search_monotone(g, pq, H, H + extra) == "checked")


@SETTINGS
@given(st.integers(-5, 5), st.integers(1, 9), st.integers(-5, 5), st.integers(1, 9))
def test_minus_twist_with_definite_pair(b1, c1, b2, c2):
    p, q = Poly((c1, b1, 1)), Poly((c2, b2, 1))
    assume(b1 * b1 - 4 * c1 < 0 and b2 * b2 - 4 * c2 < 0)
    S = SurfaceModel(Poly((1, 0, 0, 0, 1)), p, q)
    assert minus_twist_real_check(S)


def _d_points(p, q, sign):
    return [x for x in rationals_of_height(12)
            if is_rational_square(sign * p(x)) and is_rational_square(sign * q(x))]


TWIST_DATA = {
    1: (Poly((1, 0, 1)), Poly((1, 1, 1))),
    -1: (Poly((-5, 0, 1)), Poly((-8, 0, 1))),
}
TWIST_X = {s: _d_points(*TWIST_DATA[s], s) for s in TWIST_DATA}


@SETTINGS
@given(rational, st.integers(1, 40), st.sampled_from([1, -1]), st.data())
def test_twist_roundtrip(t, m, sign, data):
    p, q = TWIST_DATA[sign]
    x = data.draw(st.sampled_from(TWIST_X[sign]))
    # g(t) = sign * m^2 through the constant term
    g = Poly((sign * m * m - t**4, 0, 0, 0, 1))
    assume(discriminant(g) != 0)
    S = SurfaceModel(g, p, q)
    y = m * rational_root(sign * p(x), 2)
    z = m * rational_root(sign * q(x), 2)
    P = SurfacePoint(t, x, y, z)
    assert on_surface(S, P)
    lift = lift_to_twist(S, P)
    assert lift.sign == sign
    assert quotient_image(lift) == P
    assert twist_selector(S, P) == twist_selector(S, SurfacePoint(t, x, -y, -z))
