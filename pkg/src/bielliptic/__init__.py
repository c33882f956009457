"""Exact verification of a bielliptic surface with an adelic point that survives
the Brauer-Manin obstruction but has no rational point."""

from .covering import (
    BinaryQuarticForm,
    QuadricIntersectionModel,
    QuarticCurveModel,
    build_four_covering,
    resolvent_jacobian,
)
from .ecq import ShortWeierstrassCurve, torsion_trivial_certificate
from .errors import (
    DegenerateInput,
    InvalidInput,
    NonInvertibleElement,
    NotAdmissible,
    ResourceLimit,
    TheoremViolation,
)
from .exact import Poly
from .localsolve import LocalWitness, SolubilityVerdict, Status, everywhere_locally_soluble
from .numfield import QuarticAlgebra, epsilon_admissible, nf_norm
from .report import Report, RunConfig, emit_report, run_reproduce
from .surface import SurfaceModel, adelic_verdict, search_rational_points, validate_surface

__version__ = "0.1.0"

__all__ = [
    "BinaryQuarticForm",
    "DegenerateInput",
    "InvalidInput",
    "LocalWitness",
    "NonInvertibleElement",
    "NotAdmissible",
    "Poly",
    "QuadricIntersectionModel",
    "QuarticAlgebra",
    "QuarticCurveModel",
    "Report",
    "ResourceLimit",
    "RunConfig",
    "ShortWeierstrassCurve",
    "SolubilityVerdict",
    "Status",
    "SurfaceModel",
    "TheoremViolation",
    "adelic_verdict",
    "build_four_covering",
    "emit_report",
    "epsilon_admissible",
    "everywhere_locally_soluble",
    "nf_norm",
    "resolvent_jacobian",
    "run_reproduce",
    "search_rational_points",
    "torsion_trivial_certificate",
    "validate_surface",
]
