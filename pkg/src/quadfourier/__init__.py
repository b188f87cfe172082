"""quadfourier: exact Fourier analysis on quadric cones over small finite fields.

Everything is computed in exact arithmetic (rationals and cyclotomic
integers); the involution, composition, and point-count identities of the
transforms are certified by the suites in `quadfourier.suites` and by the
`quadfourier` CLI.
"""

from .characters import CharacterContext
from .fields import DEFAULT_MODULI, FieldElement, FieldSpec, field
from .funcspace import (
    FunctionOnSet,
    IndexedSet,
    KernelOperator,
    compose,
    group_averaging_projector,
    identity_operator,
    operators_equal_on,
)
from .matrices import RectMatrix
from .quadric import (
    QuadricPoint,
    QuadricSet,
    Stratum,
    case_sum_formula,
    classify_pair,
    count_points_bruteforce,
    double_kernel_sum,
    enumerate_quadric,
    fourier_normalized,
    fourier_raw,
    point_count_formula,
    project_special,
    quadric_kernel,
)
from .scalars import Cyclotomic, Rational

__all__ = [
    "CharacterContext",
    "Cyclotomic",
    "DEFAULT_MODULI",
    "FieldElement",
    "FieldSpec",
    "FunctionOnSet",
    "IndexedSet",
    "KernelOperator",
    "QuadricPoint",
    "QuadricSet",
    "Rational",
    "RectMatrix",
    "Stratum",
    "case_sum_formula",
    "classify_pair",
    "compose",
    "count_points_bruteforce",
    "double_kernel_sum",
    "enumerate_quadric",
    "field",
    "fourier_normalized",
    "fourier_raw",
    "group_averaging_projector",
    "identity_operator",
    "operators_equal_on",
    "point_count_formula",
    "project_special",
    "quadric_kernel",
]

__version__ = "0.1.0"
