"""Exact integer, rational and univariate polynomial arithmetic.

Everything here works over ``fractions.Fraction``; there is no floating point.
Polynomials are immutable and store coefficients constant term first.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Sequence

from .errors import InvalidInput

INF = math.inf

# Deterministic Miller-Rabin for n < 3.3e24 (Sorenson & Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981
_TRIAL_LIMIT = 10**5


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``"n"`` or ``"n/d"``; rejects anything float-like."""
    text = text.strip()
    if any(ch in text for ch in ".eE"):
        raise InvalidInput(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not an exact rational: {text!r}") from exc


# ---------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise InvalidInput(f"primality of {n} is beyond the deterministic witness range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of |n| as {prime: exponent}."""
    if n == 0:
        raise InvalidInput("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f <= _TRIAL_LIMIT and f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> set[int]:
    if n == 0:
        raise InvalidInput("prime_divisors(0) is undefined")
    return set(factorize(n))


def divisors(n: int) -> list[int]:
    """Positive divisors of |n| in increasing order."""
    if n == 0:
        raise InvalidInput("0 has infinitely many divisors")
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of an integer, or None when n is not a k-th power."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_root(-n, k)
        return None if r is None else -r
    if n < 2:
        return n
    # start above the root so integer Newton descends monotonically
    r = 1 << (-(-n.bit_length() // k))
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def rational_root(r, k: int) -> Fraction | None:
    r = as_fraction(r)
    num = integer_root(r.numerator, k)
    den = integer_root(r.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def valuation(r, p: int) -> float | int:
    """p-adic valuation; ``math.inf`` for zero."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    r = as_fraction(r)
    if r == 0:
        return INF
    return _vint(r.numerator, p) - _vint(r.denominator, p)


def _vint(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vint(n: int, p: int) -> float | int:
    """Valuation of an integer without the primality check (hot paths)."""
    return INF if n == 0 else _vint(n, p)


def squarefree_part(n: int) -> int:
    if n == 0:
        raise InvalidInput("0 has no square class")
    s = -1 if n < 0 else 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
    return s


def square_class(r) -> int:
    """Squarefree integer s with r/s a nonzero rational square."""
    r = as_fraction(r)
    if r == 0:
        raise InvalidInput("0 has no square class")
    return squarefree_part(r.numerator * r.denominator)


def is_rational_square(r) -> bool:
    r = as_fraction(r)
    return r == 0 or rational_root(r, 2) is not None


def is_square_qp(r, p: int) -> bool:
    """Whether r is a square in Q_p (0 counts as a square)."""
    r = as_fraction(r)
    if r == 0:
        return True
    v = valuation(r, p)
    if v % 2:
        return False
    u = r / Fraction(p) ** v
    if p == 2:
        return u.numerator * u.denominator % 8 == 1
    w = u.numerator * u.denominator % p
    return pow(w, (p - 1) // 2, p) == 1


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def lcm_all(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)


# ---------------------------------------------------------------------------
# dense linear algebra over Q


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by Gaussian elimination over Q."""
    m = [[as_fraction(x) for x in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise InvalidInput("determinant of a non-square matrix")
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        pv = m[col][col]
        result *= pv
        for r in range(col + 1, n):
            f = m[r][col] / pv
            if f:
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return result


def rank(matrix: Sequence[Sequence]) -> int:
    m = [[as_fraction(x) for x in row] for row in matrix]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rk = 0
    for col in range(cols):
        pivot = next((r for r in range(rk, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rk], m[pivot] = m[pivot], m[rk]
        for r in range(rows):
            if r != rk and m[r][col]:
                f = m[r][col] / m[rk][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rk])]
        rk += 1
    return rk


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial over Q, coefficients constant term first."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_high(cls, *coeffs) -> "Poly":
        """Build from coefficients listed highest degree first."""
        return cls(reversed(coeffs))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, Fraction) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly((1,))
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / other.lc
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return self.divmod(_coerce(other))[1]

    def __floordiv__(self, other):
        return self.divmod(_coerce(other))[0]

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "Poly":
        if self.is_zero():
            raise InvalidInput("zero polynomial has no monic part")
        return Poly(c / self.lc for c in self.coeffs)

    def reversed_degree(self, n: int) -> "Poly":
        """x^n f(1/x) for n >= deg f."""
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs))

    def compose_linear(self, shift, scale) -> "Poly":
        """f(shift + scale*x)."""
        lin = Poly((shift, scale))
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * lin + Poly((c,))
        return out

    def integer_coeffs(self) -> tuple[list[int], Fraction]:
        """Primitive integer coefficient list and the scalar c with self = c * prim."""
        if self.is_zero():
            return [], Fraction(0)
        den = lcm_all(c.denominator for c in self.coeffs)
        ints = [int(c * den) for c in self.coeffs]
        g = gcd_all(ints)
        if ints[-1] < 0:
            g = -g
        return [i // g for i in ints], Fraction(g, den)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c:
                terms.append(f"{c}" + ("" if i == 0 else "*x" if i == 1 else f"*x^{i}"))
        return "Poly(" + " + ".join(terms) + ")"


def _coerce(p) -> Poly:
    return p if isinstance(p, Poly) else Poly((p,))


def poly_gcd(f: Poly, g: Poly) -> Poly:
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def sylvester_matrix(f: Poly, g: Poly) -> list[list[Fraction]]:
    m, n = f.degree, g.degree
    size = m + n
    fh = list(reversed(f.coeffs))
    gh = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fh + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gh + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant(f: Poly, g: Poly) -> Fraction:
    """Res(f, g) = lc(f)^deg g * prod g(alpha) over roots alpha of f."""
    if f.is_zero() and g.is_zero():
        raise InvalidInput("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    return det(sylvester_matrix(f, g))


def discriminant(f: Poly) -> Fraction:
    n = f.degree
    if n < 2:
        raise InvalidInput("discriminant needs degree >= 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def rational_roots(f: Poly) -> list[Fraction]:
    """All rational roots with multiplicity, sorted by decreasing value."""
    if f.is_zero():
        raise InvalidInput("the zero polynomial has every rational as a root")
    roots: list[Fraction] = []
    while f.degree >= 1 and f.coeff(0) == 0:
        roots.append(Fraction(0))
        f = f // Poly.x()
    if f.degree < 1:
        return sorted(roots, reverse=True)
    ints, _ = f.integer_coeffs()
    a0, an = ints[0], ints[-1]
    cands = {Fraction(s * p, q) for p in divisors(a0) for q in divisors(an) for s in (1, -1)}
    for r in sorted(cands, reverse=True):
        lin = Poly((-r, 1))
        while f.degree >= 1 and f(r) == 0:
            roots.append(r)
            f = f // lin
    return sorted(roots, reverse=True)


def cauchy_bound(f: Poly) -> Fraction:
    return 1 + max(abs(c / f.lc) for c in f.coeffs[:-1]) if f.degree >= 1 else Fraction(0)


def is_irreducible_deg_le_4(f: Poly) -> bool:
    """Irreducibility over Q for 1 <= deg f <= 4."""
    n = f.degree
    if not 1 <= n <= 4:
        raise InvalidInput("irreducibility test supports degrees 1..4 only")
    if n == 1:
        return True
    if rational_roots(f):
        return False
    if n <= 3:
        return True
    ints, _ = f.integer_coeffs()
    a0, a1, a2, a3, a4 = ints
    bound = 2 * math.ceil(cauchy_bound(Poly(ints)))
    # (b2 x^2 + b1 x + b0)(c2 x^2 + c1 x + c0), Gauss lemma lets us stay in Z
    for b2 in divisors(a4):
        c2 = a4 // b2
        for b0, s in product(divisors(a0), (1, -1)):
            b0 *= s
            c0 = a0 // b0
            for b1 in range(-b2 * bound, b2 * bound + 1):
                num = a3 - b1 * c2
                if num % b2:
                    continue
                c1 = num // b2
                if (b2 * c0 + b1 * c1 + b0 * c2 == a2) and (b1 * c0 + b0 * c1 == a1):
                    return False
    return True


# ---------------------------------------------------------------------------
# real roots


def sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign_changes(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f: Poly) -> int:
    """Number of distinct real roots, by Sturm's theorem."""
    if f.degree < 1:
        return 0
    seq = sturm_sequence(f)
    at_minus = _sign_changes(p.lc * (-1) ** p.degree for p in seq)
    at_plus = _sign_changes(p.lc for p in seq)
    return at_minus - at_plus


def interpolate(points: Sequence[tuple]) -> Poly:
    """Lagrange interpolation through (x, y) pairs over Q."""
    out = Poly()
    for i, (xi, yi) in enumerate(points):
        basis = Poly((1,))
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = basis * Poly((-xj, 1))
                denom *= xi - xj
        out = out + basis * Poly((as_fraction(yi) / denom,))
    return out
