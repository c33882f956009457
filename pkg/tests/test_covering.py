from fractions import Fraction as F
import random

import pytest

from bielliptic import instance
from bielliptic.covering import (
    BinaryQuarticForm,
    QuadricIntersectionModel,
    QuarticCurveModel,
    binary_quartic_invariants,
    build_four_covering,
    pencil_determinant,
    projective_invariants_match,
    quartic_invariants,
    resolvent_jacobian,
    same_pencil,
    span_coordinates,
    theta_coefficient_forms,
    two_covering_cubic,
    two_covering_quadrics,
)
from bielliptic.ecq import ShortWeierstrassCurve
from bielliptic.errors import DegenerateInput, InvalidInput, NotAdmissible
from bielliptic.exact import Poly, rank
from bielliptic.numfield import QuarticAlgebra

C = instance.quartic_model()
AB = instance.four_covering()


def cubic_of(model):
    """det(l Q - Q') from the (l, m) pencil determinant."""
    Fm = pencil_determinant(model)
    return Poly(reversed([c * (-1) ** i for i, c in enumerate(Fm.coeffs)]))


def test_model_validation():
    with pytest.raises(InvalidInput):
        QuarticCurveModel(0, 1, 1, 1)
    with pytest.raises(DegenerateInput):
        QuarticCurveModel(1, -2, 0, 1)
    with pytest.raises(InvalidInput):
        QuadricIntersectionModel([[1, 2], [2, 1]], [[1, 0], [0, 1]])


def test_resolvent_examples():
    assert quartic_invariants(C) == (0, 24032943)
    assert resolvent_jacobian(C) == ShortWeierstrassCurve(0, -648889461)
    x41 = QuarticCurveModel(1, 0, 0, 1)
    assert quartic_invariants(x41) == (12, 0)
    assert resolvent_jacobian(x41) == ShortWeierstrassCurve(-324, 0)


def test_binary_invariants_restrict_to_depressed_case():
    assert binary_quartic_invariants(C.homogenized()) == quartic_invariants(C)
    assert binary_quartic_invariants(BinaryQuarticForm((1, 0, 0, 0, 1))) == (12, 0)


def test_invariant_weights_under_scaling():
    Fm = BinaryQuarticForm((2, -1, 3, 5, -7))
    I, J = binary_quartic_invariants(Fm)
    G = Fm.substitute([[2, 0], [0, 1]])
    assert binary_quartic_invariants(G) == (2**4 * I, 2**6 * J)


def test_two_covering_quadrics():
    for model in (C, QuarticCurveModel(1, 0, 0, 1), QuarticCurveModel(F(1, 2), 3, -1, 5)):
        QI = two_covering_quadrics(model)
        assert rank(QI.M1) == 3
        assert cubic_of(QI) == two_covering_cubic(model)
    Fm = pencil_determinant(two_covering_quadrics(QuarticCurveModel(1, 0, 0, 1)))
    # (1/4)(l^3 - 4 l) up to the sign convention for mu
    assert Fm.coeffs == (0, F(-1, 4), 0, F(1, 1), 0)


def test_two_covering_golden_cubic():
    # frozen from a sympy expansion of the closed form at (3, -162, -351, -729)
    assert two_covering_cubic(C) == Poly((F(369603, 4), 8748, 81, F(1, 4)))


def test_two_covering_affine_chart():
    QI = two_covering_quadrics(C)
    rng = random.Random(1)
    for _ in range(20):
        x, y = F(rng.randint(-50, 50), rng.randint(1, 9)), F(rng.randint(-50, 50), rng.randint(1, 9))
        q1, q2 = QI.forms_at((x * x, 1, x, y))
        assert q1 == 0
        assert q2 == C.quartic()(x) - y * y


def test_four_covering_reproduces_matrices():
    QI = build_four_covering(C, instance.epsilon())
    assert same_pencil(QI, AB)
    assert QI == AB
    assert span_coordinates(AB.M1, QI) == (1, 0)
    assert span_coordinates(AB.M2, QI) == (0, 1)


def test_four_covering_on_x4_minus_1():
    K = QuarticAlgebra(Poly.from_high(1, 0, 0, 0, -1))
    M2, M3 = theta_coefficient_forms(QuarticCurveModel(1, 0, 0, -1), K.one())
    # x2^2 + 2 x1 x3 + x4^2 and 2 x1 x4 + 2 x2 x3
    assert M2 == ((0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1))
    assert M3 == ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0))


def test_inadmissible_eps_rejected():
    with pytest.raises(NotAdmissible):
        build_four_covering(C, C.algebra().one())
    with pytest.raises(InvalidInput):
        build_four_covering(C, QuarticAlgebra(Poly.from_high(1, 0, 0, 0, -1)).one())


def test_reference_pencil_determinant():
    Fm = pencil_determinant(AB)
    # frozen from a sympy determinant expansion
    assert Fm.coeffs == (-59049, 85293, -118098, 0, 19683)
    assert binary_quartic_invariants(Fm) == (0, 9310854529169127)
    assert projective_invariants_match(Fm, C.homogenized())
    assert AB.is_smooth()


def test_scalar_pencil():
    M = [[1, 2, 0, 0], [2, 5, 1, 0], [0, 1, 3, 1], [0, 0, 1, -2]]
    Fm = pencil_determinant(QuadricIntersectionModel(M, M))
    d = Fm.coeffs[0]
    assert Fm.coeffs == (d, 4 * d, 6 * d, 4 * d, d)
    assert not QuadricIntersectionModel(M, M).is_smooth()


def test_same_pencil_detects_difference():
    other = QuadricIntersectionModel(AB.M1, [[F(int(i == j)) for j in range(4)] for i in range(4)])
    assert not same_pencil(AB, other)
    assert span_coordinates(other.M2, AB) is None
