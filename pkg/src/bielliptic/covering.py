"""2- and 4-coverings: quartic models, their quadric models and pencils.

A 2-covering is stored as y^2 = a x^4 + c x^2 + d x + e.  A 4-covering is a
pair of symmetric 4x4 matrices; the curve is x M1 x^t = x M2 x^t = 0 in P^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ecq import ShortWeierstrassCurve
from .errors import DegenerateInput, InvalidInput, NotAdmissible
from .exact import Poly, as_fraction, det, discriminant, gcd_all, interpolate, lcm_all, rank
from .numfield import QuarticAlgebra, QuarticAlgebraElement, epsilon_admissible

Matrix = tuple[tuple[Fraction, ...], ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(as_fraction(x) for x in row) for row in rows)


def _is_symmetric(m: Matrix) -> bool:
    n = len(m)
    return all(len(r) == n for r in m) and all(m[i][j] == m[j][i] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class QuarticCurveModel:
    """The curve y^2 = a x^4 + c x^2 + d x + e."""

    a: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __init__(self, a, c, d, e):
        for name, val in zip("acde", (a, c, d, e)):
            object.__setattr__(self, name, as_fraction(val))
        if self.a == 0:
            raise InvalidInput("leading coefficient a must be nonzero")
        if discriminant(self.quartic()) == 0:
            raise DegenerateInput("quartic has a repeated root")

    def quartic(self) -> Poly:
        return Poly((self.e, self.d, self.c, 0, self.a))

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.a, self.c, self.d, self.e

    def homogenized(self) -> "BinaryQuarticForm":
        return BinaryQuarticForm((self.a, 0, self.c, self.d, self.e))

    def algebra(self) -> QuarticAlgebra:
        return QuarticAlgebra.from_quartic(self.quartic())


@dataclass(frozen=True)
class BinaryQuarticForm:
    """F(l, m) = a l^4 + b l^3 m + c l^2 m^2 + d l m^3 + e m^4."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence):
        cs = tuple(as_fraction(c) for c in coeffs)
        if len(cs) != 5:
            raise InvalidInput("binary quartic needs five coefficients")
        object.__setattr__(self, "coeffs", cs)

    def __call__(self, lam, mu):
        return sum(c * lam ** (4 - i) * mu**i for i, c in enumerate(self.coeffs))

    def dehomogenize(self) -> Poly:
        """F(x, 1) as a polynomial in x."""
        return Poly(reversed(self.coeffs))

    def substitute(self, m: Sequence[Sequence]) -> "BinaryQuarticForm":
        """F(p l + q m, r l + s m) for m = [[p, q], [r, s]]."""
        (p, q), (r, s) = m
        pts = [(k, self(p + q * k, r + s * k)) for k in range(5)]
        # G(1, k) = sum g_i k^i, so the interpolant lists G's coefficients in order
        poly = interpolate(pts)
        return BinaryQuarticForm(poly.coeff(i) for i in range(5))

    def discriminant(self) -> Fraction:
        I, J = binary_quartic_invariants(self)
        return (4 * I**3 - J**2) / 27


@dataclass(frozen=True)
class QuadricIntersectionModel:
    """Two symmetric 4x4 matrices; the curve is their common zero locus in P^3."""

    M1: Matrix
    M2: Matrix

    def __init__(self, M1, M2):
        M1, M2 = as_matrix(M1), as_matrix(M2)
        for m in (M1, M2):
            if len(m) != 4 or not _is_symmetric(m):
                raise InvalidInput("quadric matrices must be symmetric 4x4")
        object.__setattr__(self, "M1", M1)
        object.__setattr__(self, "M2", M2)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for m in (self.M1, self.M2) for row in m for x in row)

    def int_matrices(self) -> tuple[list[list[int]], list[list[int]]]:
        if not self.is_integral():
            raise InvalidInput("model has non-integral entries")
        return tuple([[int(x) for x in row] for row in m] for m in (self.M1, self.M2))

    def forms_at(self, v: Sequence) -> tuple:
        return tuple(
            sum(m[i][j] * v[i] * v[j] for i in range(4) for j in range(4)) for m in (self.M1, self.M2)
        )

    def is_smooth(self) -> bool:
        F = pencil_determinant(self)
        return any(F.coeffs) and F.discriminant() != 0


# ---------------------------------------------------------------------------
# invariants and the Jacobian


def binary_quartic_invariants(F: BinaryQuarticForm) -> tuple[Fraction, Fraction]:
    a, b, c, d, e = F.coeffs
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c**3
    return I, J


def quartic_invariants(C: QuarticCurveModel) -> tuple[Fraction, Fraction]:
    a, c, d, e = C.coefficients()
    return 12 * a * e + c * c, 72 * a * c * e - 27 * a * d * d - 2 * c**3


def jacobian_from_invariants(I, J) -> ShortWeierstrassCurve:
    try:
        return ShortWeierstrassCurve(-27 * as_fraction(I), -27 * as_fraction(J))
    except DegenerateInput as exc:
        raise DegenerateInput("invariants give a singular Jacobian") from exc


def resolvent_jacobian(C: QuarticCurveModel) -> ShortWeierstrassCurve:
    """E: u^2 = v^3 - 27 I v - 27 J."""
    return jacobian_from_invariants(*quartic_invariants(C))


def projective_invariants_match(F: BinaryQuarticForm, G: BinaryQuarticForm) -> bool:
    """I_F^3 J_G^2 == I_G^3 J_F^2, i.e. same (I^3 : J^2)."""
    IF, JF = binary_quartic_invariants(F)
    IG, JG = binary_quartic_invariants(G)
    return IF**3 * JG**2 == IG**3 * JF**2


# ---------------------------------------------------------------------------
# pencils


def pencil_determinant(QI: QuadricIntersectionModel) -> BinaryQuarticForm:
    """det(l M1 + m M2) as a binary quartic in (l, m), by interpolation at m = 0..4."""
    def at(k):
        return det([[a + k * b for a, b in zip(r1, r2)] for r1, r2 in zip(QI.M1, QI.M2)])

    poly = interpolate([(k, at(k)) for k in range(5)])
    return BinaryQuarticForm(poly.coeff(i) for i in range(5))


def two_covering_quadrics(C: QuarticCurveModel) -> QuadricIntersectionModel:
    """ut - x^2 and -y^2 + a u^2 + c ut + d xt + e t^2 in coordinates (u, t, x, y)."""
    h = Fraction(1, 2)
    a, c, d, e = C.coefficients()
    M1 = [[0, h, 0, 0], [h, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, 0]]
    M2 = [[a, c * h, 0, 0], [c * h, e, d * h, 0], [0, d * h, 0, 0], [0, 0, 0, -1]]
    return QuadricIntersectionModel(M1, M2)


def two_covering_cubic(C: QuarticCurveModel) -> Poly:
    """(1/4)(l^3 - 2c l^2 + (c^2 - 4ae) l + a d^2)."""
    a, c, d, e = C.coefficients()
    return Poly((a * d * d, c * c - 4 * a * e, -2 * c, 1)) * Poly((Fraction(1, 4),))


def normalize_integral(m: Matrix) -> Matrix:
    """Scale to a primitive integer matrix whose first nonzero diagonal entry is negative."""
    flat = [x for row in m for x in row]
    if not any(flat):
        raise DegenerateInput("zero quadratic form")
    den = lcm_all(x.denominator for x in flat)
    ints = [[int(x * den) for x in row] for row in m]
    g = gcd_all(x for row in ints for x in row)
    diag = [ints[i][i] for i in range(len(ints)) if ints[i][i]]
    lead = diag[0] if diag else next(x for row in ints for x in row if x)
    if lead > 0:
        g = -g
    return as_matrix([[x // g for x in row] for row in ints])


def theta_coefficient_forms(C: QuarticCurveModel, eps: QuarticAlgebraElement) -> tuple[Matrix, Matrix]:
    """Raw matrices of the theta^2 and theta^3 coefficients of eps (sum x_j theta^{j-1})^2."""
    alg = eps.algebra
    prods = {}
    for s in range(7):
        prods[s] = alg.reduce(eps.as_poly() * Poly.x() ** s)
    M2 = as_matrix([[prods[i + j][2] for j in range(4)] for i in range(4)])
    M3 = as_matrix([[prods[i + j][3] for j in range(4)] for i in range(4)])
    return M2, M3


def build_four_covering(C: QuarticCurveModel, eps: QuarticAlgebraElement) -> QuadricIntersectionModel:
    if eps.algebra.modulus != C.quartic().monic():
        raise InvalidInput("eps must live in Q[x]/(quartic of C)")
    if not epsilon_admissible(eps, C.a):
        raise NotAdmissible("a^{-1} N(eps) is not a rational square")
    M2, M3 = theta_coefficient_forms(C, eps)
    QI = QuadricIntersectionModel(normalize_integral(M2), normalize_integral(M3))
    if not QI.is_smooth():
        raise DegenerateInput("pencil determinant has a repeated factor")
    return QI


# ---------------------------------------------------------------------------
# spans of quadric pairs


def _sym_vector(m: Matrix) -> list[Fraction]:
    return [m[i][j] for i in range(4) for j in range(i, 4)]


def same_pencil(P: QuadricIntersectionModel, Q: QuadricIntersectionModel) -> bool:
    """Whether the two pairs span the same 2-dimensional Q-space of forms."""
    p = [_sym_vector(P.M1), _sym_vector(P.M2)]
    q = [_sym_vector(Q.M1), _sym_vector(Q.M2)]
    return rank(p) == 2 and rank(q) == 2 and rank(p + q) == 2


def span_coordinates(target: Matrix, basis: QuadricIntersectionModel) -> tuple[Fraction, Fraction] | None:
    """(s, t) with target = s M1 + t M2, or None when target is outside the span."""
    b1, b2, v = _sym_vector(basis.M1), _sym_vector(basis.M2), _sym_vector(target)
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            dd = b1[i] * b2[j] - b1[j] * b2[i]
            if dd:
                s = (v[i] * b2[j] - v[j] * b2[i]) / dd
                t = (b1[i] * v[j] - b1[j] * v[i]) / dd
                if all(s * x + t * y == z for x, y, z in zip(b1, b2, v)):
                    return s, t
                return None
    return None
