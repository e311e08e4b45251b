"""Exact classification of nilpotent orbits of affine sl_n over Laurent series.

The package provides the field K = C[[t]][t^-1] with Gaussian-rational
coefficients and tracked truncation, exact linear algebra over K, the
completed affine algebra with its cocycle bracket and loop-group adjoint
action, quasi-Jordan normal forms, and the orbit classification map
(sigma, k, level) together with a CLI front end.
"""

from .errors import (
    AffnilError,
    CertifiedDetWithDerivation,
    DimensionMismatch,
    DivisionByZero,
    InvalidPartition,
    InvalidShift,
    LaurentSyntaxError,
    NoRoot,
    NotConjugate,
    NotNilpotent,
    NotTraceless,
    NotUnimodular,
    PrecisionExhausted,
    RootNotRepresentable,
    ShapeMismatch,
    Singular,
    ZeroHasNoOrder,
    ZeroScale,
)
from .gaussian import GR_I, GR_ONE, GR_ZERO, GaussianRational, gr
from .laurent import (
    DEFAULT_WORKING_PREC,
    LaurentElement,
    format_laurent,
    format_scalar,
    parse_laurent,
    parse_scalar,
)
from .matk import MatK
from .affine import (
    AffineElement,
    DetMode,
    GroupElement,
    adjoint_act,
    bracket,
    form_t,
    is_nilpotent,
    killing_coef,
)
from .normalform import (
    OrbitLabel,
    QuasiJordanForm,
    block_multiplicity,
    canonical_rep,
    jordan_transform,
    mult_order,
    quasi_jordanize,
    rank_profile_partition,
    read_quasi_jordan,
)
from .orbits import (
    are_conjugate,
    classify,
    conjugator_quasi_jordan,
    enumerate_orbits,
    level_of,
    partitions,
)

__version__ = "0.1.0"

__all__ = [
    "AffnilError",
    "AffineElement",
    "CertifiedDetWithDerivation",
    "DEFAULT_WORKING_PREC",
    "DetMode",
    "DimensionMismatch",
    "DivisionByZero",
    "GR_I",
    "GR_ONE",
    "GR_ZERO",
    "GaussianRational",
    "GroupElement",
    "InvalidPartition",
    "InvalidShift",
    "LaurentElement",
    "LaurentSyntaxError",
    "MatK",
    "NoRoot",
    "NotConjugate",
    "NotNilpotent",
    "NotTraceless",
    "NotUnimodular",
    "OrbitLabel",
    "PrecisionExhausted",
    "QuasiJordanForm",
    "RootNotRepresentable",
    "ShapeMismatch",
    "Singular",
    "ZeroHasNoOrder",
    "ZeroScale",
    "adjoint_act",
    "are_conjugate",
    "block_multiplicity",
    "bracket",
    "canonical_rep",
    "classify",
    "conjugator_quasi_jordan",
    "enumerate_orbits",
    "form_t",
    "format_laurent",
    "format_scalar",
    "gr",
    "is_nilpotent",
    "jordan_transform",
    "killing_coef",
    "level_of",
    "mult_order",
    "parse_laurent",
    "parse_scalar",
    "partitions",
    "quasi_jordanize",
    "rank_profile_partition",
    "read_quasi_jordan",
]
