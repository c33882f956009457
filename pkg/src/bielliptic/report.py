"""Run configuration, the reproduction pipeline and report serialisation."""

from __future__ import annotations

import io
import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import instance
from .covering import (
    QuadricIntersectionModel,
    QuarticCurveModel,
    build_four_covering,
    pencil_determinant,
    quartic_invariants,
    resolvent_jacobian,
    same_pencil,
    span_coordinates,
    two_covering_cubic,
    two_covering_quadrics,
)
from .ecq import ShortWeierstrassCurve, curves_isomorphic_over_Q, isomorphism_scale, rational_two_torsion
from .ecq import torsion_trivial_certificate
from .errors import InvalidInput, ResourceLimit
from .exact import Poly, is_irreducible_deg_le_4, parse_rational, rational_roots
from .localsolve import (
    Status,
    bad_prime_report,
    everywhere_locally_soluble,
    extend_witness,
    overall_status,
    verify_witness,
)
from .numfield import epsilon_admissible, nf_norm
from .surface import (
    CONFIRMED,
    SurfaceModel,
    adelic_verdict,
    minus_twist_real_check,
    search_rational_points,
    validate_surface,
)

PASS, FAIL, ASSUMED, UNKNOWN = "PASS", "FAIL", "ASSUMED", "UNKNOWN"

# Every check points at a formula or value fragment of the source text.
ANCHORS = {
    "resolvent_invariants": "I=12ae+c^2",
    "jacobian_identification": "y^2 =x^3 -1221",
    "two_torsion_absent": "y^2=x^3-1221",
    "torsion_trivial": r"E({\bf Q})=\left\{ 0 \right\}",
    "rank_zero": r"J({\bf Q})=0",
    "quartic_irreducible": "g(x)=3(x^4 - 54x^2 - 117x - 243)",
    "epsilon_norm": r"243=3 \times 9^2",
    "epsilon_admissible": r"a^{-1}N_{K/k}(\epsilon)\in k^{*2}",
    "fourcover_matrices": r"{\bf x} A {\bf x}^t = 0",
    "two_cover_pencil": r"(1/4)(\lambda^3-2c \lambda^2+(c^2-4ae) \lambda+",
    "bad_primes": "$2,~3,~11,~37$",
    "reference_witnesses": "(0,2,1,0) mod(2^3)",
    "quartic_everywhere_soluble": r"y^2=ax^4+cx^2+dx+e",
    "fourcover_everywhere_soluble": r"{\bf x} B {\bf x}^t=0",
    "surface_valid": r"Res(p(x),q(x))=\pm 1",
    "minus_twist_no_real_point": "y^2+p(x)=z^2+q(x)=0",
    "rational_point_search": r"X({\bf Q})=\emptyset",
    "adelic_verdict": r"X({{\bf A}}_{{\bf Q}})^{{\rm Br}}\not=\emptyset",
}

SUBCOMMAND_CHECKS = {
    "resolvent": ["resolvent_invariants", "jacobian_identification", "two_torsion_absent", "torsion_trivial",
                  "rank_zero", "quartic_irreducible"],
    "fourcover": ["epsilon_norm", "epsilon_admissible", "fourcover_matrices", "two_cover_pencil"],
    "local": ["bad_primes", "reference_witnesses", "quartic_everywhere_soluble", "fourcover_everywhere_soluble"],
    "surface": ["surface_valid", "minus_twist_no_real_point", "adelic_verdict"],
    "search": ["rational_point_search"],
}
SUBCOMMAND_CHECKS["reproduce"] = list(ANCHORS)


@dataclass(frozen=True)
class RunConfig:
    quartic: tuple[Fraction, ...] = tuple(Fraction(c) for c in instance.QUARTIC_COEFFS)
    eps: tuple[Fraction, ...] = instance.EPSILON_COORDS
    p: tuple[Fraction, ...] = (Fraction(1), Fraction(0), Fraction(1))  # highest degree first
    q: tuple[Fraction, ...] = (Fraction(1), Fraction(0), Fraction(2))
    height: int = 50
    primes: Optional[tuple[int, ...]] = None
    depth_cap: Optional[int] = None
    assume_rank_zero: bool = True
    format: str = "human"
    timings: bool = False

    @classmethod
    def from_mapping(cls, data: dict, base: "RunConfig | None" = None) -> "RunConfig":
        cfg = base or cls()
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise InvalidInput(f"unknown config keys: {sorted(unknown)}")
        updates = {}
        for key in ("quartic", "eps", "p", "q"):
            if key in data:
                updates[key] = tuple(_rational(v) for v in data[key])
        if "height" in data:
            updates["height"] = int(data["height"])
        if "primes" in data:
            updates["primes"] = None if data["primes"] is None else tuple(int(p) for p in data["primes"])
        if "depth_cap" in data:
            updates["depth_cap"] = None if data["depth_cap"] is None else int(data["depth_cap"])
        for key in ("assume_rank_zero", "timings"):
            if key in data:
                updates[key] = bool(data[key])
        if "format" in data:
            updates["format"] = str(data["format"])
        cfg = replace(cfg, **updates)
        cfg.check()
        return cfg

    def check(self):
        if len(self.quartic) != 4 or len(self.eps) != 4:
            raise InvalidInput("quartic needs a,c,d,e and eps needs four coordinates")
        if len(self.p) != 3 or len(self.q) != 3:
            raise InvalidInput("p and q are quadratics given by three coefficients")
        if self.height < 1:
            raise InvalidInput("height must be >= 1")
        if self.format not in ("human", "machine"):
            raise InvalidInput("format is human or machine")

    def to_json(self) -> dict:
        return {
            "quartic": [str(c) for c in self.quartic],
            "eps": [str(c) for c in self.eps],
            "p": [str(c) for c in self.p],
            "q": [str(c) for c in self.q],
            "height": self.height,
            "primes": None if self.primes is None else list(self.primes),
            "depth_cap": self.depth_cap,
            "assume_rank_zero": self.assume_rank_zero,
            "format": self.format,
            "timings": self.timings,
        }


def _rational(v) -> Fraction:
    if isinstance(v, bool):
        raise InvalidInput("booleans are not rationals")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    raise InvalidInput(f"rationals must be strings like '3/4' or integers, got {v!r}")


@dataclass
class CheckResult:
    check_id: str
    anchor: str
    status: str
    payload: dict = field(default_factory=dict)
    ms: Optional[int] = None

    def to_json(self, timings: bool = True) -> dict:
        return {"check_id": self.check_id, "anchor": self.anchor, "status": self.status,
                "payload": self.payload, "ms": self.ms if timings else None}


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)
    verdict: Optional[str] = None
    config: Optional[dict] = None
    resource_limited: bool = False

    @property
    def failed(self) -> list[str]:
        return [c.check_id for c in self.checks if c.status == FAIL]

    @property
    def assumed(self) -> list[str]:
        return [c.check_id for c in self.checks if c.status == ASSUMED]

    @property
    def overall(self) -> str:
        return FAIL if self.failed else PASS

    def to_json(self, timings: bool = True) -> dict:
        return {
            "overall": self.overall,
            "verdict": self.verdict,
            "assumed": self.assumed,
            "failed": self.failed,
            "config": self.config,
            "checks": [c.to_json(timings) for c in self.checks],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        checks = [CheckResult(c["check_id"], c["anchor"], c["status"], c["payload"], c["ms"])
                  for c in data["checks"]]
        return cls(checks, data.get("verdict"), data.get("config"))


# ---------------------------------------------------------------------------
# serialisation helpers


def jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [jsonable(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Status):
        return obj.value
    if isinstance(obj, float):
        return "inf" if obj == float("inf") else obj
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return obj


def matrix_payload(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def curve_payload(E: ShortWeierstrassCurve) -> dict:
    return {"A": jsonable(E.A), "B": jsonable(E.B), "equation": str(E)}


# ---------------------------------------------------------------------------
# pipeline


class _Context:
    """Lazily built objects shared across checks."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self._cache: dict = {}

    def get(self, key: str, build: Callable):
        if key not in self._cache:
            try:
                self._cache[key] = (True, build())
            except (InvalidInput, ArithmeticError) as exc:
                self._cache[key] = (False, exc)
        ok, val = self._cache[key]
        if not ok:
            raise val
        return val

    @property
    def C(self) -> QuarticCurveModel:
        return self.get("C", lambda: QuarticCurveModel(*self.cfg.quartic))

    @property
    def eps(self):
        return self.get("eps", lambda: self.C.algebra().element(self.cfg.eps))

    @property
    def fourcover(self) -> QuadricIntersectionModel:
        return self.get("fourcover", lambda: build_four_covering(self.C, self.eps))

    @property
    def surface(self) -> SurfaceModel:
        return self.get("surface", lambda: SurfaceModel(
            self.C.quartic() if all(c.denominator == 1 for c in self.C.quartic().coeffs)
            else _raise(InvalidInput("surface needs an integral quartic")),
            Poly.from_high(*self.cfg.p), Poly.from_high(*self.cfg.q)))


def _raise(exc):
    raise exc


def _check_resolvent(ctx):
    I, J = quartic_invariants(ctx.C)
    E = resolvent_jacobian(ctx.C)
    return PASS, {"I": I, "J": J, "jacobian": curve_payload(E)}


def _check_jacobian_identification(ctx):
    E = resolvent_jacobian(ctx.C)
    target = instance.jacobian()
    ok = curves_isomorphic_over_Q(target, E)
    return (PASS if ok else FAIL), {"resolvent": curve_payload(E), "target": curve_payload(target),
                                     "u_squared": isomorphism_scale(target, E)}


def _check_two_torsion(ctx):
    J = instance.jacobian()
    roots = rational_roots(J.rhs())
    pts = rational_two_torsion(J)
    return (PASS if not roots and not pts else FAIL), {"cubic_rational_roots": roots}


def _check_torsion(ctx):
    cert = torsion_trivial_certificate(instance.jacobian())
    return (PASS if cert.trivial else FAIL), {"status": cert.status, "route": cert.route,
                                              "routes": cert.routes}


def _check_rank(ctx):
    if ctx.cfg.assume_rank_zero:
        return ASSUMED, {"assumption": "rank J(Q) = 0", "source": "external input, not computed"}
    return UNKNOWN, {"assumption": "rank J(Q) = 0", "withheld": True}


def _check_irreducible(ctx):
    return (PASS if is_irreducible_deg_le_4(ctx.C.quartic()) else FAIL), {"quartic": repr(ctx.C.quartic())}


def _check_norm(ctx):
    n = nf_norm(ctx.eps)
    return (PASS if n == 243 else FAIL), {"norm": n, "expected": 243}


def _check_admissible(ctx):
    ok = epsilon_admissible(ctx.eps, ctx.C.a)
    return (PASS if ok else FAIL), {"norm_over_a": nf_norm(ctx.eps) / ctx.C.a}


def _check_matrices(ctx):
    QI = ctx.fourcover
    printed = instance.four_covering()
    span = same_pencil(QI, printed)
    entrywise = QI == printed
    coords = {"A": span_coordinates(printed.M1, QI), "B": span_coordinates(printed.M2, QI)}
    return (PASS if span else FAIL), {"M1": matrix_payload(QI.M1), "M2": matrix_payload(QI.M2),
                                      "same_span_as_A_B": span, "entrywise_equal": entrywise,
                                      "A_B_in_computed_basis": coords}


def _check_two_cover_pencil(ctx):
    F = pencil_determinant(two_covering_quadrics(ctx.C))
    # det(l Q - Q') = F(l, -1)
    cubic = Poly(reversed([c * (-1) ** i for i, c in enumerate(F.coeffs)]))
    expected = two_covering_cubic(ctx.C)
    return (PASS if cubic == expected else FAIL), {"det": repr(cubic), "closed_form": repr(expected)}


def _check_bad_primes(ctx):
    rep = bad_prime_report(ctx.fourcover)
    ok = rep["filtered"] == set(instance.EXPECTED_BAD_PRIMES)
    return (PASS if ok else FAIL), {"raw": rep["raw"], "filtered": rep["filtered"]}


def _check_reference_witnesses(ctx):
    QI = instance.four_covering()
    results = []
    ok = True
    for coords, p, k in instance.LOCAL_POINTS:
        try:
            w = extend_witness(QI, coords, p, k, ctx.cfg.depth_cap)
            good = verify_witness(QI, w)
            results.append({"class": list(coords), "prime": p, "precision": k, "witness": w.to_json(),
                            "verified": good})
        except InvalidInput as exc:
            good = False
            results.append({"class": list(coords), "prime": p, "precision": k, "error": str(exc)})
        ok = ok and good
    return (PASS if ok else FAIL), {"witnesses": results}


def _local_payload(verdicts):
    return {"overall": overall_status(verdicts), "verdicts": [v.to_json() for v in verdicts]}


def _check_quartic_local(ctx):
    verdicts = everywhere_locally_soluble(ctx.C, ctx.cfg.primes, ctx.cfg.depth_cap)
    return (PASS if overall_status(verdicts) is Status.SOLUBLE else FAIL), _local_payload(verdicts)


def _check_fourcover_local(ctx):
    verdicts = everywhere_locally_soluble(ctx.fourcover, ctx.cfg.primes, ctx.cfg.depth_cap)
    st = overall_status(verdicts)
    return (PASS if st is Status.SOLUBLE else UNKNOWN if st is Status.UNKNOWN else FAIL), _local_payload(verdicts)


def _check_surface(ctx):
    rep = validate_surface(ctx.surface)
    return (PASS if rep.ok else FAIL), {"items": {k: {"ok": ok, "detail": d} for k, (ok, d) in rep.items.items()}}


def _check_minus_twist(ctx):
    ok = minus_twist_real_check(ctx.surface)
    return (PASS if ok else FAIL), {"minus_twist_has_no_real_point": ok}


def _check_search(ctx):
    pts = search_rational_points(ctx.surface, ctx.cfg.height)
    return (PASS if not pts else FAIL), {"height": ctx.cfg.height, "points": [
        {"t": p.t, "x": p.x, "y": p.y, "z": p.z} for p in pts]}


def _check_adelic(ctx):
    v = adelic_verdict(ctx.surface, ctx.fourcover, ctx.cfg.assume_rank_zero, eps=ctx.eps,
                       height_bound=ctx.cfg.height, depth_cap=ctx.cfg.depth_cap)
    ctx.verdict = v.verdict
    return (PASS if v.verdict == CONFIRMED else FAIL), {
        "verdict": v.verdict, "assumptions": v.assumptions, "failing": v.failing,
        "items": [{"key": it.key, "status": it.status, "detail": it.detail} for it in v.items]}


CHECKS: dict[str, Callable] = {
    "resolvent_invariants": _check_resolvent,
    "jacobian_identification": _check_jacobian_identification,
    "two_torsion_absent": _check_two_torsion,
    "torsion_trivial": _check_torsion,
    "rank_zero": _check_rank,
    "quartic_irreducible": _check_irreducible,
    "epsilon_norm": _check_norm,
    "epsilon_admissible": _check_admissible,
    "fourcover_matrices": _check_matrices,
    "two_cover_pencil": _check_two_cover_pencil,
    "bad_primes": _check_bad_primes,
    "reference_witnesses": _check_reference_witnesses,
    "quartic_everywhere_soluble": _check_quartic_local,
    "fourcover_everywhere_soluble": _check_fourcover_local,
    "surface_valid": _check_surface,
    "minus_twist_no_real_point": _check_minus_twist,
    "rational_point_search": _check_search,
    "adelic_verdict": _check_adelic,
}


def run_checks(cfg: RunConfig, check_ids: Sequence[str]) -> Report:
    ctx = _Context(cfg)
    ctx.verdict = None
    report = Report(config=cfg.to_json())
    for cid in check_ids:
        start = time.perf_counter()
        try:
            status, payload = CHECKS[cid](ctx)
        except ResourceLimit as exc:
            status, payload = FAIL, {"error": f"resource limit: {exc}", "deepest": repr(exc.deepest)}
            report.resource_limited = True
        except (InvalidInput, ArithmeticError, ValueError) as exc:
            status, payload = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
        ms = int(round((time.perf_counter() - start) * 1000))
        report.checks.append(CheckResult(cid, ANCHORS[cid], status, jsonable(payload), ms))
    report.verdict = ctx.verdict
    return report


def run_reproduce(cfg: RunConfig | None = None) -> Report:
    return run_checks(cfg or RunConfig(), SUBCOMMAND_CHECKS["reproduce"])


def emit_report(report: Report, fmt: str = "human", sink=None, timings: bool = False) -> int:
    """Write the report; returns the process exit code (0 iff no FAIL)."""
    sink = sink if sink is not None else io.StringIO()
    if fmt == "machine":
        sink.write(json.dumps(report.to_json(timings), sort_keys=True, separators=(",", ":")) + "\n")
    elif fmt == "human":
        sink.write(render_human(report, timings))
    else:
        raise InvalidInput(f"unknown format {fmt!r}")
    if report.failed:
        return 1
    return 0


def render_human(report: Report, timings: bool = False) -> str:
    width = max((len(c.check_id) for c in report.checks), default=10)
    lines = []
    for c in report.checks:
        t = f" {c.ms:>6} ms" if timings and c.ms is not None else ""
        lines.append(f"[{c.status:<7}] {c.check_id:<{width}}{t}  {c.anchor}")
    lines.append("")
    lines.append(f"overall: {report.overall}")
    if report.verdict:
        lines.append(f"verdict: {report.verdict}")
    if report.assumed:
        lines.append(f"assumed: {', '.join(report.assumed)}")
    if report.failed:
        lines.append(f"failed:  {', '.join(report.failed)}")
    return "\n".join(lines) + "\n"


__all__ = [
    "ANCHORS",
    "CheckResult",
    "Report",
    "RunConfig",
    "emit_report",
    "run_checks",
    "run_reproduce",
]
