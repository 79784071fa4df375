"""Simplex principal moment analysis.

Builds measures from sample data as weighted sums of uniform measures on
simplexes, spectrally decomposes the resulting second moment matrix, and
exposes optimal low-rank projections with exact error estimates.
"""

from .errors import (
    ConfigError,
    DecompositionError,
    DuplicateIdError,
    EmptyInputError,
    EmptyMeasureError,
    ParseError,
    PmaError,
    RankZeroError,
    UnknownAnnotationError,
    UnknownSampleError,
)
from .frame import DataFrame, parse_annotations, parse_data, serialize_data
from .moments import (
    MomentCoefficients,
    PmaModel,
    assemble,
    first_moment,
    fit,
    fit_pma,
    principal_functional,
    project,
    simplex_second_moment_coeffs,
)
from .report import (
    ProjectionReport,
    export_axes,
    export_eigenvalues,
    export_report,
    export_scores,
    report,
    second_moment_seminorm,
)
from .simplexes import (
    Simplex,
    SimplexSet,
    Vertex,
    apply_volume_weights,
    chain,
    group_by,
    knn,
    points,
    sample_vertex,
    simplex_set,
    simplex_volume,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataFrame",
    "DecompositionError",
    "DuplicateIdError",
    "EmptyInputError",
    "EmptyMeasureError",
    "MomentCoefficients",
    "ParseError",
    "PmaError",
    "PmaModel",
    "ProjectionReport",
    "RankZeroError",
    "Simplex",
    "SimplexSet",
    "UnknownAnnotationError",
    "UnknownSampleError",
    "Vertex",
    "apply_volume_weights",
    "assemble",
    "chain",
    "export_axes",
    "export_eigenvalues",
    "export_report",
    "export_scores",
    "first_moment",
    "fit",
    "fit_pma",
    "group_by",
    "knn",
    "parse_annotations",
    "parse_data",
    "points",
    "principal_functional",
    "project",
    "report",
    "sample_vertex",
    "second_moment_seminorm",
    "serialize_data",
    "simplex_second_moment_coeffs",
    "simplex_set",
    "simplex_volume",
]
