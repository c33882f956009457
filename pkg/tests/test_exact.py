from fractions import Fraction as F
import math

import pytest

from bielliptic.errors import InvalidInput
from bielliptic.exact import (
    Poly,
    count_real_roots,
    discriminant,
    factorize,
    integer_root,
    interpolate,
    is_irreducible_deg_le_4,
    is_prime,
    is_square_qp,
    parse_rational,
    prime_divisors,
    rational_roots,
    resultant,
    square_class,
    valuation,
)

X = Poly.x()
G_MONIC = Poly.from_high(1, 0, -54, -117, -243)
G = Poly.from_high(3, 0, -162, -351, -729)


def test_poly_is_trimmed_and_evaluates():
    f = Poly((1, 2, 0, 0))
    assert f.coeffs == (1, 2)
    assert f.degree == 1
    assert Poly(()).degree == -1
    assert f(F(1, 2)) == 2
    assert Poly.from_high(1, 0, 1) == X**2 + Poly((1,))


def test_poly_division_roundtrip():
    f = Poly.from_high(3, -1, 4, 1, -5, 9)
    g = Poly.from_high(2, 0, F(1, 3))
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree < g.degree


def test_resultant_examples():
    assert resultant(X**2 + 1, X**2 + 2) == 1
    f = X**3 - 2 * X + 5
    assert resultant(f, f) == 0
    assert resultant(X - 2, X - 5) == -3


def test_resultant_rejects_two_zeros():
    with pytest.raises(InvalidInput):
        resultant(Poly(()), Poly(()))


def test_discriminant_examples():
    assert discriminant(X**2 + 1) == -4
    assert discriminant(X**3 - 1221) == -40252707
    # frozen from an independent sympy evaluation
    assert discriminant(G_MONIC) == -29344223403
    assert factorize(29344223403) == {3: 11, 11: 2, 37: 2}


def test_discriminant_needs_degree_two():
    with pytest.raises(InvalidInput):
        discriminant(X + 1)


def test_valuation_examples():
    assert valuation(243, 3) == 5
    assert valuation(0, 7) == math.inf
    assert valuation(F(9, 4), 2) == -2
    with pytest.raises(InvalidInput):
        valuation(12, 4)


def test_square_class_examples():
    assert square_class(81) == 1
    assert square_class(243) == 3
    assert square_class(-12) == -3
    assert square_class(F(8, 27)) == 6
    with pytest.raises(InvalidInput):
        square_class(0)


def test_rational_roots_examples():
    assert rational_roots(X**3 - 1221) == []
    assert rational_roots(X**2 - 1) == [1, -1]
    assert rational_roots(G) == []
    assert rational_roots((X - F(1, 2)) ** 2 * (X + 3)) == [F(1, 2), F(1, 2), -3]


def test_irreducibility_examples():
    assert is_irreducible_deg_le_4(G)
    assert not is_irreducible_deg_le_4(X**4 - 1)
    assert is_irreducible_deg_le_4(X**3 - 1221)
    assert not is_irreducible_deg_le_4((X**2 + X + 7) * (X**2 - 3 * X + 11))
    assert is_irreducible_deg_le_4(X**4 + 1)
    with pytest.raises(InvalidInput):
        is_irreducible_deg_le_4(X**5 + 1)


def test_prime_divisors_examples():
    assert prime_divisors(1221) == {3, 11, 37}
    assert prime_divisors(1) == set()
    assert prime_divisors(64) == {2}
    with pytest.raises(InvalidInput):
        prime_divisors(0)


def test_primality_and_factoring_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    n = (2**31 - 1) * 1000003 * 999983
    assert factorize(n) == {2**31 - 1: 1, 1000003: 1, 999983: 1}


def test_integer_root():
    assert integer_root(3**12, 6) == 9
    assert integer_root(10**40 + 1, 2) is None
    assert integer_root(-27, 3) == -3


def test_parse_rational():
    assert parse_rational("-1/3") == F(-1, 3)
    assert parse_rational(" 7 ") == 7
    for bad in ("0.5", "1e3", "1/0", "x"):
        with pytest.raises(InvalidInput):
            parse_rational(bad)


def test_square_test_in_qp():
    assert is_square_qp(17, 2)
    assert not is_square_qp(5, 2)
    assert is_square_qp(F(4, 9), 3)
    assert not is_square_qp(3, 3)
    assert is_square_qp(-1, 5)
    assert not is_square_qp(-1, 3)


def test_sturm_counts():
    assert count_real_roots(X**4 - 5 * X**2 + 4) == 4
    assert count_real_roots(X**4 + 1) == 0
    assert count_real_roots(G) == 2


def test_interpolate():
    f = Poly.from_high(F(1, 4), -2, 0, 5)
    assert interpolate([(k, f(k)) for k in range(4)]) == f
