"""The quartic algebra K = Q[theta]/(g) used to twist the 2-covering.

Elements are stored as four rational coordinates in the power basis
1, theta, theta^2, theta^3 of the *monic* modulus a^{-1} g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateInput, InvalidInput, NonInvertibleElement
from .exact import Poly, as_fraction, det, discriminant, is_irreducible_deg_le_4, square_class


@dataclass(frozen=True)
class QuarticAlgebra:
    modulus: Poly
    original_leading: Fraction = Fraction(1)

    def __post_init__(self):
        m = self.modulus
        if m.degree != 4 or m.lc != 1:
            raise InvalidInput("modulus must be a monic quartic")
        if discriminant(m) == 0:
            raise DegenerateInput("modulus has a repeated root")
        object.__setattr__(self, "original_leading", as_fraction(self.original_leading))

    @classmethod
    def from_quartic(cls, g: Poly) -> "QuarticAlgebra":
        return cls(g.monic(), g.lc)

    @property
    def is_field(self) -> bool:
        # reducible moduli give an etale algebra that is not a field; still usable
        return is_irreducible_deg_le_4(self.modulus)

    def element(self, coords: Sequence) -> "QuarticAlgebraElement":
        return QuarticAlgebraElement(tuple(as_fraction(c) for c in coords), self)

    def one(self) -> "QuarticAlgebraElement":
        return self.element((1, 0, 0, 0))

    def theta(self) -> "QuarticAlgebraElement":
        return self.element((0, 1, 0, 0))

    def reduce(self, p: Poly) -> tuple[Fraction, ...]:
        r = p % self.modulus
        return tuple(r.coeff(i) for i in range(4))


@dataclass(frozen=True)
class QuarticAlgebraElement:
    coordinates: tuple[Fraction, ...]
    algebra: QuarticAlgebra

    def __post_init__(self):
        if len(self.coordinates) != 4:
            raise InvalidInput("quartic algebra elements have four coordinates")

    def as_poly(self) -> Poly:
        return Poly(self.coordinates)

    def __mul__(self, other: "QuarticAlgebraElement") -> "QuarticAlgebraElement":
        return nf_mul(self, other)

    def __add__(self, other: "QuarticAlgebraElement") -> "QuarticAlgebraElement":
        _same_algebra(self, other)
        return QuarticAlgebraElement(
            tuple(a + b for a, b in zip(self.coordinates, other.coordinates)), self.algebra
        )

    def norm(self) -> Fraction:
        return nf_norm(self)


def _same_algebra(u, v):
    if u.algebra != v.algebra:
        raise InvalidInput("elements belong to different algebras")


def nf_mul(u: QuarticAlgebraElement, v: QuarticAlgebraElement) -> QuarticAlgebraElement:
    _same_algebra(u, v)
    return QuarticAlgebraElement(u.algebra.reduce(u.as_poly() * v.as_poly()), u.algebra)


def multiplication_matrix(u: QuarticAlgebraElement) -> list[list[Fraction]]:
    """Column j holds the coordinates of u * theta^j."""
    alg = u.algebra
    cols = [alg.reduce(u.as_poly() * Poly.x() ** j) for j in range(4)]
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def nf_norm(u: QuarticAlgebraElement) -> Fraction:
    return det(multiplication_matrix(u))


def epsilon_admissible(eps: QuarticAlgebraElement, a) -> bool:
    """Whether a^{-1} N(eps) is a nonzero rational square."""
    a = as_fraction(a)
    if a == 0:
        raise InvalidInput("a must be nonzero")
    n = nf_norm(eps)
    if n == 0:
        raise NonInvertibleElement("eps has zero norm")
    return square_class(n / a) == 1
