"""rotkit: rotation representations for SO(n) and their continuity.

The library implements matched pairs of maps (g, f) between rotation
matrices and flat representation vectors — the discontinuous 3D/4D
encodings (Euler angles, quaternion variants, axis-angle, Rodriguez
vectors) and the continuous ones (the 6D/Gram-Schmidt family for SO(n),
its stereographically reduced 5D form, and n-projection generalizations) —
plus continuity probes, differentiable decoders with a small reverse-mode
tape, and an MLP autoencoder benchmark showing that continuous
representations are easier to regress.
"""

from .autoencoder import RotationAutoencoder
from .exceptions import (
    ConfigError,
    DegenerateInput,
    DimensionMismatch,
    EmptyInput,
    InvalidK,
    NearZeroAxis,
    NearZeroInput,
    NearZeroScale,
    ProjectionPole,
    RotkitError,
)
from .experiments import ExperimentConfig, RunReport, error_percentiles, run_sanity_test, write_report
from .kinds import RepresentationKind, kind_from_name
from .linalg import (
    generalized_cross,
    geodesic_distance,
    normalize,
    orthogonalize_3x3,
    pca_top2,
    rotation_from_axis_angle,
    rotation_x,
    rotation_y,
    rotation_z,
)
from .probe import JumpReport, RotationCurve, export_pca_curves, jump_statistic, make_axis_curve
from .representations import SimilarityTransform, pair_for_kind, repr_compose
from .sampling import sample_axis_angle, sample_uniform_so3, sample_uniform_so_n
from .transformers import RotationRepresenter

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DegenerateInput", "DimensionMismatch", "EmptyInput",
    "ExperimentConfig", "InvalidK", "JumpReport", "NearZeroAxis",
    "NearZeroInput", "NearZeroScale", "ProjectionPole", "RepresentationKind",
    "RotationAutoencoder", "RotationCurve", "RotationRepresenter",
    "RotkitError", "RunReport", "SimilarityTransform", "error_percentiles",
    "export_pca_curves", "generalized_cross", "geodesic_distance",
    "jump_statistic", "kind_from_name", "make_axis_curve", "normalize",
    "orthogonalize_3x3", "pair_for_kind", "pca_top2", "repr_compose",
    "rotation_from_axis_angle", "rotation_x", "rotation_y", "rotation_z",
    "run_sanity_test", "sample_axis_angle", "sample_uniform_so3",
    "sample_uniform_so_n", "write_report",
]
