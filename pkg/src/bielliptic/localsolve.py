"""Local solubility of quartic models and quadric intersections.

p-adic places are decided by a breadth-first residue-tree search.  A node is
a residue class of points modulo p^k; it is dropped as soon as no point of
the class can lie on the curve and it is closed as soluble once a Hensel
criterion guarantees a p-adic point inside the class.

For a pair of integral quadratic forms the criterion used is: both forms
vanish mod p^k at x, and some 2x2 minor of the matrix with rows (M1 x, M2 x)
has valuation t with k >= 2t + 1 + 2 v_p(2).  The extra 2 v_p(2) accounts for
the gradient of x M x^t being 2 M x.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import mpmath
import numpy as np

from .covering import (
    BinaryQuarticForm,
    QuadricIntersectionModel,
    QuarticCurveModel,
    binary_quartic_invariants,
    pencil_determinant,
)
from .errors import DegenerateInput, InvalidInput, ResourceLimit
from .exact import (
    Poly,
    count_real_roots,
    discriminant,
    is_prime,
    is_square_qp,
    prime_divisors,
    vint,
)

REAL = "REAL"
GOOD = "GOOD"
Place = Union[int, str]

SMALL_PRIME_LIMIT = 17


class Status(str, enum.Enum):
    SOLUBLE = "SOLUBLE"
    INSOLUBLE = "INSOLUBLE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class LocalWitness:
    prime: Place
    precision: int
    coordinates: tuple
    lifting_data: dict = field(default_factory=dict, compare=False)
    origin: Optional[tuple] = None  # (coordinates, precision) of a coarser class it refines

    def to_json(self) -> dict:
        out = {"prime": self.prime, "precision": self.precision, "coords": list(self.coordinates)}
        if self.lifting_data:
            out["lifting"] = _jsonable(self.lifting_data)
        if self.origin is not None:
            out["origin"] = {"coords": list(self.origin[0]), "precision": self.origin[1]}
        return out


@dataclass(frozen=True)
class SolubilityVerdict:
    place: Place
    status: Status
    witness: Optional[LocalWitness] = None
    certificate_kind: str = ""
    details: dict = field(default_factory=dict, compare=False)

    @property
    def soluble(self) -> bool:
        return self.status is Status.SOLUBLE

    def to_json(self) -> dict:
        out = {"place": self.place, "status": self.status.value, "certificate": self.certificate_kind}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, enum.Enum):
        return obj.value
    return obj


def _check_prime(p: int):
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidInput(f"{p!r} is not a prime")


# ---------------------------------------------------------------------------
# bad primes


def _integral_quartic(C: QuarticCurveModel) -> Poly:
    """Integer-coefficient quartic in the same square class as C's."""
    g = C.quartic()
    den = math.lcm(*(c.denominator for c in g.coeffs))
    return g * Poly((den * den,))


def _integral_pair(QI: QuadricIntersectionModel) -> tuple[list[list[int]], list[list[int]]]:
    out = []
    for m in (QI.M1, QI.M2):
        den = math.lcm(*(x.denominator for row in m for x in row))
        out.append([[int(x * den) for x in row] for row in m])
    return out[0], out[1]


def _binary_disc(F: BinaryQuarticForm) -> Fraction:
    return F.discriminant()


def bad_prime_report(model) -> dict:
    """Raw superset of bad primes plus the subset that survives filtering.

    Raw: {2} and the primes of lc * disc (quartic) or of the discriminant of
    the pencil determinant (quadrics).  Filtered: 2 and those raw primes that
    divide 4 I^3 - J^2 of the associated binary quartic.
    """
    if isinstance(model, QuarticCurveModel):
        g = _integral_quartic(model)
        D = g.lc * discriminant(g)
        F = BinaryQuarticForm(list(reversed(g.coeffs)))
    elif isinstance(model, QuadricIntersectionModel):
        a, b = _integral_pair(model)
        F = pencil_determinant(QuadricIntersectionModel(a, b))
        if not any(F.coeffs):
            raise InvalidInput("pencil determinant vanishes identically")
        D = _binary_disc(F)
    else:
        raise InvalidInput(f"unsupported model {type(model).__name__}")
    if D == 0:
        raise InvalidInput("singular model")
    raw = {2} | prime_divisors(D.numerator) | prime_divisors(D.denominator)
    I, J = binary_quartic_invariants(F)
    core = 4 * I**3 - J**2
    keep = prime_divisors(core.numerator) if core else set()
    filtered = {p for p in raw if p == 2 or p in keep}
    return {"raw": raw, "filtered": filtered, "discriminant": D}


def bad_primes(model, filtered: bool = False) -> set[int]:
    rep = bad_prime_report(model)
    return set(rep["filtered" if filtered else "raw"])


def depth_bound(model, p: int) -> int:
    rep = bad_prime_report(model)
    D = rep["discriminant"]
    v = vint(D.numerator, p) - vint(D.denominator, p)
    k = 2 * max(v, 0) + 3
    return k + 2 if p == 2 else k


# ---------------------------------------------------------------------------
# quartic models y^2 = g(x)


def _quartic_node(g: Poly, x0: int, pk: int, p: int):
    """Classify the class x0 + p^k Z_p: 'soluble', 'dead' or 'branch'."""
    h = g.compose_linear(x0, pk)
    h0 = h.coeff(0)
    if h0 == 0:
        return "soluble", {"exact_root": True}
    v0 = vint(int(h0), p)
    m = min((vint(int(c), p) for c in h.coeffs[1:] if c), default=math.inf)
    if v0 < m:
        if v0 % 2:
            return "dead", None
        margin = m - v0
        # unit part of h(z) is fixed mod p (mod 8 when p = 2) across the class
        if margin >= 1 + 2 * vint(2, p):
            if is_square_qp(h0, p):
                return "soluble", {"value_valuation": v0, "stability_margin": margin}
            return "dead", None
    return "branch", None


def quartic_locally_soluble(C: QuarticCurveModel, p: int, depth_cap: int | None = None) -> SolubilityVerdict:
    """Decide C(Q_p) != empty; witnesses are projective (X, Z) with x = X/Z."""
    _check_prime(p)
    g = _integral_quartic(C)
    grev = g.reversed_degree(4)
    kmax = depth_cap if depth_cap is not None else depth_bound(C, p)
    # chart 0: x in Z_p; chart 1: x = 1/x' with x' in pZ_p (includes the points at infinity)
    frontier = [(0, 0, 0), (1, 1, 0)]
    explored = 0
    while frontier:
        frontier.sort()
        level = frontier[0][0]
        current = [node for node in frontier if node[0] == level]
        nxt = [node for node in frontier if node[0] != level]
        for k, chart, x0 in current:
            if k > kmax:
                raise ResourceLimit(f"quartic tree at p={p} exceeded depth {kmax}", deepest=(k, chart, x0))
            explored += 1
            poly = grev if chart else g
            kind, data = _quartic_node(poly, x0, p**k, p)
            if kind == "soluble":
                coords = (1, x0) if chart else (x0, 1)
                w = LocalWitness(p, max(k, 1), coords, {"chart": chart, **data})
                return SolubilityVerdict(p, Status.SOLUBLE, w, "lifting-witness", {"nodes": explored})
            if kind == "branch":
                nxt.extend((k + 1, chart, x0 + j * p**k) for j in range(p))
        frontier = nxt
    return SolubilityVerdict(p, Status.INSOLUBLE, None, "exhausted-residue-tree", {"nodes": explored, "depth_bound": kmax})


def verify_quartic_witness(C: QuarticCurveModel, w: LocalWitness) -> bool:
    if w.prime == REAL:
        return _verify_real_quartic(C, w)
    p, (X, Z) = w.prime, w.coordinates
    g = _integral_quartic(C)
    if Z == 1:
        poly, x0 = g, X
    elif X == 1 and Z % p == 0:
        poly, x0 = g.reversed_degree(4), Z
    else:
        return False
    kind, _ = _quartic_node(poly, x0, p**w.precision, p)
    return kind == "soluble"


def real_soluble_quartic(C: QuarticCurveModel) -> SolubilityVerdict:
    g = C.quartic()
    if g.lc > 0:
        return SolubilityVerdict(REAL, Status.SOLUBLE, LocalWitness(REAL, 0, (1, 0), {"reason": "a > 0"}), "sign-analysis")
    roots = count_real_roots(g)
    if roots:
        return SolubilityVerdict(REAL, Status.SOLUBLE, None, "sign-analysis", {"real_roots": roots})
    # a < 0 and no real root: g < 0 everywhere
    return SolubilityVerdict(REAL, Status.INSOLUBLE, None, "definite-form", {"real_roots": 0})


def _verify_real_quartic(C: QuarticCurveModel, w: LocalWitness) -> bool:
    X, Z = w.coordinates
    g = C.quartic()
    if Z == 0:
        return g.lc > 0
    return g(Fraction(X) / Fraction(Z)) >= 0


# ---------------------------------------------------------------------------
# quadric intersections


class _Pair:
    """Integer forms with cached evaluation helpers."""

    def __init__(self, QI: QuadricIntersectionModel):
        self.A, self.B = _integral_pair(QI)

    @staticmethod
    def _mv(m, v):
        return [m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3] for i in range(4)]

    def gradients(self, v):
        return self._mv(self.A, v), self._mv(self.B, v)

    def values(self, v):
        ga, gb = self.gradients(v)
        return sum(x * y for x, y in zip(ga, v)), sum(x * y for x, y in zip(gb, v)), ga, gb


_PAIRS = list(itertools.combinations(range(4), 2))


def _minor_valuation(ga, gb, p: int, cap: int) -> tuple[float, tuple[int, int]]:
    best, where = math.inf, (0, 1)
    for i, j in _PAIRS:
        v = vint(ga[i] * gb[j] - ga[j] * gb[i], p)
        if v < best:
            best, where = v, (i, j)
            if v == 0:
                break
    return (best if best < cap else math.inf), where


def hensel_ok(k: int, t: float, p: int) -> bool:
    return t != math.inf and k >= 2 * t + 1 + 2 * vint(2, p)


def _normalize(v: Sequence[int], p: int, mod: int) -> tuple[int, ...] | None:
    for i, x in enumerate(v):
        if x % p:
            inv = pow(x, -1, mod)
            return tuple(y * inv % mod for y in v)
    return None


def _level_one(p: int) -> Iterable[tuple[int, ...]]:
    for i in (3, 2, 1, 0):
        for rest in itertools.product(range(p), repeat=3 - i):
            yield (0,) * i + (1,) + rest


def _unit_index(v, p):
    return next(i for i, x in enumerate(v) if x % p)


def _children(pair: _Pair, v: tuple[int, ...], k: int, p: int, fa: int, fb: int, ga, gb):
    """Lifts of a level-k node to level k+1 (forms vanish mod p^(k+1))."""
    pk = p**k
    i = _unit_index(v, p)
    # F(v + p^k d) = F(v) + 2 p^k d.(Mv) + p^{2k} F(d); last term vanishes mod p^{k+1}
    ra, rb = (fa // pk) % p, (fb // pk) % p
    free = [j for j in range(4) if j != i]
    out = []
    for d in itertools.product(range(p), repeat=3):
        da = ra + 2 * sum(dj * ga[j] for dj, j in zip(d, free))
        if da % p:
            continue
        db = rb + 2 * sum(dj * gb[j] for dj, j in zip(d, free))
        if db % p:
            continue
        w = list(v)
        for dj, j in zip(d, free):
            w[j] += pk * dj
        out.append(tuple(w))
    return out


def _tree_search(pair: _Pair, p: int, roots: list[tuple[int, ...]], k0: int, kmax: int,
                 max_nodes: int | None = None):
    """Breadth-first residue-tree search from level-k0 roots; returns (witness | None, stats)."""
    frontier = sorted(roots)
    k = k0
    explored = 0
    widest = len(frontier)
    while frontier:
        if k > kmax:
            raise ResourceLimit(f"residue tree at p={p} exceeded depth {kmax}", deepest=(k, frontier[0]))
        nxt = []
        for v in frontier:
            fa, fb, ga, gb = pair.values(v)
            explored += 1
            t, where = _minor_valuation(ga, gb, p, k)
            if hensel_ok(k, t, p):
                w = LocalWitness(p, k, v, {"minor": where, "valuation": t})
                return w, {"nodes": explored, "depth": k, "widest_level": widest}
            nxt.extend(_children(pair, v, k, p, fa, fb, ga, gb))
            if max_nodes is not None and explored + len(nxt) > max_nodes:
                raise ResourceLimit(f"residue tree at p={p} exceeded {max_nodes} nodes", deepest=(k, v))
        frontier = sorted(set(nxt))
        widest = max(widest, len(frontier))
        k += 1
    return None, {"nodes": explored, "depth": k - 1, "widest_level": widest}


def quadric_intersection_locally_soluble(QI: QuadricIntersectionModel, p: int,
                                         depth_cap: int | None = None) -> SolubilityVerdict:
    _check_prime(p)
    pair = _Pair(QI)
    kmax = depth_cap if depth_cap is not None else depth_bound(QI, p)
    roots = []
    for v in _level_one(p):
        fa, fb, _, _ = pair.values(v)
        if fa % p == 0 and fb % p == 0:
            roots.append(v)
    w, stats = _tree_search(pair, p, roots, 1, kmax)
    stats["level_one_points"] = len(roots)
    if w is not None:
        return SolubilityVerdict(p, Status.SOLUBLE, w, "lifting-witness", stats)
    stats["depth_bound"] = kmax
    return SolubilityVerdict(p, Status.INSOLUBLE, None, "exhausted-residue-tree", stats)


def class_contains(QI: QuadricIntersectionModel, coords: Sequence[int], p: int, k: int) -> bool:
    """Whether the primitive class coords mod p^k satisfies both forms mod p^k."""
    if _normalize(coords, p, p**k) is None:
        return False
    fa, fb, _, _ = _Pair(QI).values(list(coords))
    return fa % p**k == 0 and fb % p**k == 0


def extend_witness(QI: QuadricIntersectionModel, coords: Sequence[int], p: int, k: int,
                   depth_cap: int | None = None) -> LocalWitness:
    """Refine a residue class mod p^k to one that passes the Hensel criterion.

    Raises InvalidInput when the class is not on the curve mod p^k, and
    ResourceLimit when no refinement certifies within the depth cap.
    """
    _check_prime(p)
    if not class_contains(QI, coords, p, k):
        raise InvalidInput(f"{tuple(coords)} is not a point of the curve mod {p}^{k}")
    pair = _Pair(QI)
    start = _normalize(coords, p, p**k)
    kmax = depth_cap if depth_cap is not None else depth_bound(QI, p)
    w, stats = _tree_search(pair, p, [start], k, max(kmax, k))
    if w is None:
        raise InvalidInput(f"class {tuple(coords)} mod {p}^{k} contains no {p}-adic point")
    return LocalWitness(w.prime, w.precision, w.coordinates, {**w.lifting_data, **stats},
                        origin=(tuple(coords), k))


def verify_witness(model, w: LocalWitness) -> bool:
    """Re-check a witness without searching."""
    if isinstance(model, QuarticCurveModel):
        return verify_quartic_witness(model, w)
    if w.prime == REAL:
        return _verify_real_qi(model, w)
    p, k = w.prime, w.precision
    if not isinstance(p, int) or not is_prime(p) or k < 1:
        return False
    v = [int(x) for x in w.coordinates]
    if len(v) != 4 or all(x % p == 0 for x in v):
        return False
    pair = _Pair(model)
    fa, fb, ga, gb = pair.values(v)
    if fa % p**k or fb % p**k:
        return False
    t, _ = _minor_valuation(ga, gb, p, k)
    if not hensel_ok(k, t, p):
        return False
    if w.origin is not None:
        oc, ok_ = w.origin
        if ok_ > k or not class_contains(model, oc, p, ok_):
            return False
        mod = p**ok_
        if _normalize(oc, p, mod) != _normalize(v, p, mod):
            return False
    return True


# ---------------------------------------------------------------------------
# the real place for quadric intersections


def charpoly(m: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Coefficients c_0..c_n of det(tI - M), by Faddeev-LeVerrier."""
    n = len(m)
    M = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M (M_{k-1} + c_{n-k+1} I)
        prev = [[Mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return coeffs


def definiteness(m: Sequence[Sequence[Fraction]]) -> int:
    """+1 positive definite, -1 negative definite, 0 otherwise (Descartes on the char. poly)."""
    cs = charpoly(m)
    n = len(m)
    # real-rooted: all roots > 0 iff coefficients strictly alternate in sign
    if all(cs[i] != 0 and (cs[i] > 0) == ((n - i) % 2 == 0) for i in range(n + 1)):
        return 1
    if all(c > 0 for c in cs):
        return -1
    return 0


def _pencil_samples(bound: int = 8):
    seen = set()
    for a in range(-bound, bound + 1):
        for b in range(0, bound + 1):
            if (a, b) == (0, 0) or math.gcd(a, b) != 1 or (b == 0 and a < 0):
                continue
            if (a, b) not in seen:
                seen.add((a, b))
                yield a, b


def definite_member(QI: QuadricIntersectionModel, bound: int = 8):
    for lam, mu in _pencil_samples(bound):
        m = [[lam * x + mu * y for x, y in zip(r1, r2)] for r1, r2 in zip(QI.M1, QI.M2)]
        s = definiteness(m)
        if s:
            return (lam, mu), s
    return None


def _newton_real_point(QI: QuadricIntersectionModel, starts: int = 64, seed: int = 0):
    A = np.array([[float(x) for x in row] for row in QI.M1])
    B = np.array([[float(x) for x in row] for row in QI.M2])
    sa, sb = np.abs(A).max() or 1.0, np.abs(B).max() or 1.0
    A, B = A / sa, B / sb
    rng = np.random.default_rng(seed)
    for _ in range(starts):
        x = rng.standard_normal(4)
        x /= np.linalg.norm(x)
        for _ in range(60):
            r = np.array([x @ A @ x, x @ B @ x, x @ x - 1.0])
            if np.abs(r).max() < 1e-14:
                break
            Jm = np.vstack([2 * A @ x, 2 * B @ x, 2 * x])
            step, *_ = np.linalg.lstsq(Jm, -r, rcond=None)
            x = x + step
        if np.abs([x @ A @ x, x @ B @ x]).max() < 1e-10:
            return x
    return None


def _refine_mp(QI: QuadricIntersectionModel, x0, dps: int = 60):
    with mpmath.workdps(dps):
        A = mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in row] for row in QI.M1])
        B = mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in row] for row in QI.M2])
        x = mpmath.matrix([mpmath.mpf(float(c)) for c in x0])
        for _ in range(40):
            fa = (x.T * A * x)[0]
            fb = (x.T * B * x)[0]
            r = mpmath.matrix([fa, fb, (x.T * x)[0] - 1])
            J = mpmath.matrix(3, 4)
            ga, gb = A * x, B * x
            for j in range(4):
                J[0, j], J[1, j], J[2, j] = 2 * ga[j], 2 * gb[j], 2 * x[j]
            # minimum-norm step for the 3x4 system
            step = J.T * mpmath.lu_solve(J * J.T, -r)
            x = x + step
            if mpmath.norm(step) < mpmath.mpf(10) ** (-dps + 10):
                break
        fa, fb = (x.T * A * x)[0], (x.T * B * x)[0]
        ga, gb = A * x, B * x
        G = mpmath.matrix(2, 4)
        for j in range(4):
            G[0, j], G[1, j] = ga[j], gb[j]
        sv = mpmath.svd_r(G, compute_uv=False)
        smin = min(sv[0], sv[1])
        return [float(c) for c in x], float(max(abs(fa), abs(fb))), float(smin)


def real_soluble_quadric_intersection(QI: QuadricIntersectionModel) -> SolubilityVerdict:
    found = definite_member(QI)
    if found is not None:
        (lam, mu), sign = found
        return SolubilityVerdict(REAL, Status.INSOLUBLE, None, "definite-form",
                                 {"member": (lam, mu), "sign": sign})
    x = _newton_real_point(QI)
    if x is not None:
        coords, resid, smin = _refine_mp(QI, x)
        if resid < 1e-12 and smin > 1e-8:
            w = LocalWitness(REAL, 0, tuple(round(c, 15) for c in coords),
                             {"residual": resid, "jacobian_rank": 2, "min_singular_value": smin})
            return SolubilityVerdict(REAL, Status.SOLUBLE, w, "lifting-witness")
    return SolubilityVerdict(REAL, Status.UNKNOWN, None, "", {"reason": "no definite member and no Newton point"})


def _verify_real_qi(QI: QuadricIntersectionModel, w: LocalWitness) -> bool:
    x = [float(c) for c in w.coordinates]
    coords, resid, smin = _refine_mp(QI, x)
    return resid < 1e-12 and smin > 1e-8 and max(abs(a - b) for a, b in zip(coords, x)) < 1e-6


# ---------------------------------------------------------------------------
# all places


def local_verdict(model, place: Place, depth_cap: int | None = None) -> SolubilityVerdict:
    if isinstance(model, QuarticCurveModel):
        if place == REAL:
            return real_soluble_quartic(model)
        return quartic_locally_soluble(model, place, depth_cap)
    if isinstance(model, QuadricIntersectionModel):
        if place == REAL:
            return real_soluble_quadric_intersection(model)
        return quadric_intersection_locally_soluble(model, place, depth_cap)
    raise InvalidInput(f"unsupported model {type(model).__name__}")


def everywhere_locally_soluble(model, primes: Iterable[int] | None = None,
                               depth_cap: int | None = None) -> list[SolubilityVerdict]:
    """Verdicts at REAL, every raw bad prime, every small good prime, and an aggregate GOOD entry."""
    if isinstance(model, QuadricIntersectionModel) and not model.is_smooth():
        raise DegenerateInput("quadric intersection is singular")
    rep = bad_prime_report(model)
    if primes is None:
        small = {p for p in range(3, SMALL_PRIME_LIMIT) if is_prime(p)}
        primes = sorted(rep["raw"] | small)
    verdicts = [local_verdict(model, REAL)]
    for p in sorted(set(primes)):
        verdicts.append(local_verdict(model, p, depth_cap))
    verdicts.append(SolubilityVerdict(
        GOOD, Status.SOLUBLE, None, "good-reduction",
        {"excluded": sorted(rep["raw"] | set(primes)),
         "reason": "smooth genus-one reduction has an F_p-point; Hensel lifts it"},
    ))
    return verdicts


def overall_status(verdicts: Sequence[SolubilityVerdict]) -> Status:
    if any(v.status is Status.INSOLUBLE for v in verdicts):
        return Status.INSOLUBLE
    if any(v.status is Status.UNKNOWN for v in verdicts):
        return Status.UNKNOWN
    return Status.SOLUBLE
