"""The concrete counterexample data: the quartic, the twisting element, A and B."""

from fractions import Fraction

from .covering import QuadricIntersectionModel, QuarticCurveModel
from .ecq import ShortWeierstrassCurve
from .exact import Poly

# y^2 = 3(x^4 - 54x^2 - 117x - 243)
QUARTIC_COEFFS = (3, -162, -351, -729)

# -theta^3/3 - theta^2 + 29 theta + 27, power-basis coordinates
EPSILON_COORDS = (Fraction(27), Fraction(29), Fraction(-1), Fraction(-1, 3))

JACOBIAN_B = -1221

MATRIX_A = (
    (-1, 11, -66, 396),
    (11, -66, 396, -2520),
    (-66, 396, -2520, 16335),
    (396, -2520, 16335, -105786),
)

MATRIX_B = (
    (-1, -3, 33, -198),
    (-3, 33, -198, 1188),
    (33, -198, 1188, -7560),
    (-198, 1188, -7560, 49005),
)

# (coordinates, prime, exponent): each residue class contains a p-adic point
LOCAL_POINTS = (
    ((0, 2, 1, 0), 2, 3),
    ((12, 21, 1, 0), 3, 3),
    ((0, 1, 0, 0), 11, 1),
    ((0, 1, 9, 16), 37, 1),
)

EXPECTED_BAD_PRIMES = frozenset({2, 3, 11, 37})

# monic, resultant 1, both positive definite
DEFAULT_P = Poly.from_high(1, 0, 1)
DEFAULT_Q = Poly.from_high(1, 0, 2)


def quartic_model() -> QuarticCurveModel:
    return QuarticCurveModel(*QUARTIC_COEFFS)


def epsilon():
    return quartic_model().algebra().element(EPSILON_COORDS)


def jacobian() -> ShortWeierstrassCurve:
    return ShortWeierstrassCurve(0, JACOBIAN_B)


def four_covering() -> QuadricIntersectionModel:
    return QuadricIntersectionModel(MATRIX_A, MATRIX_B)
