"""Empirical continuity probes.

A representation map g is probed on closed curves of rotations about a
fixed axis: the largest jump between representations of adjacent samples
stays bounded away from zero for discontinuous maps no matter how fine the
grid, while for continuous maps it shrinks linearly with the step (so the
fitted Lipschitz quotient max_jump / step is stable under refinement).
"""

import csv
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, RotkitError
from .formatting import csv_float
from .kinds import RepresentationKind, kind_from_name
from .linalg import pca_top2, rotation_from_axis_angle
from .representations import pair_for_kind

AXIS_VECTORS = {
    "X": np.array([1.0, 0.0, 0.0]),
    "Y": np.array([0.0, 1.0, 0.0]),
    "Z": np.array([0.0, 0.0, 1.0]),
}


@dataclass(frozen=True)
class RotationCurve:
    axis_label: str
    thetas: np.ndarray  # strictly increasing, uniform step on [0, 2pi)
    matrices: np.ndarray  # (len(thetas), 3, 3)

    @property
    def step(self):
        return 2.0 * np.pi / len(self.thetas)


@dataclass(frozen=True)
class JumpReport:
    representation: RepresentationKind
    axis_label: str
    step: float
    max_jump: float
    fitted_lipschitz: float


def make_axis_curve(axis_label, n_samples):
    """All rotations about one coordinate axis, on a uniform theta grid
    covering [0, 2pi); matrices are exact closed-form axis rotations."""
    label = str(axis_label).upper()
    if label not in AXIS_VECTORS:
        raise DimensionMismatch(f"axis must be one of X, Y, Z, got {axis_label!r}")
    n_samples = int(n_samples)
    if n_samples < 8:
        raise RotkitError("need at least 8 samples")
    thetas = np.arange(n_samples) * (2.0 * np.pi / n_samples)
    matrices = rotation_from_axis_angle(AXIS_VECTORS[label], thetas)
    return RotationCurve(label, thetas, matrices)


def _as_kind(kind):
    return kind_from_name(kind) if isinstance(kind, str) else kind


def curve_representations(kind, curve):
    """Representation vectors g(M) for every sample of the curve."""
    kind = _as_kind(kind)
    g, _ = pair_for_kind(kind)
    return g(curve.matrices)


def jump_statistic(kind, curve):
    """Cyclic maximum over adjacent pairs (including last -> first) of the
    Euclidean jump in representation space, plus the Lipschitz quotient
    max_jump / step."""
    kind = _as_kind(kind)
    reps = curve_representations(kind, curve)
    diffs = np.roll(reps, -1, axis=0) - reps
    max_jump = float(np.linalg.norm(diffs, axis=-1).max())
    step = curve.step
    return JumpReport(kind, curve.axis_label, step, max_jump, max_jump / step)


def export_pca_curves(kinds, curves, out_path):
    """Write one CSV of PCA-flattened representation curves.

    Per (kind, curve) pair the representation vectors are reduced to their
    two leading principal components; rows are
    (representation, axis, theta, pc1, pc2). UTF-8, '.' decimal separator,
    newline-terminated rows.
    """
    rows = []
    for kind in kinds:
        kind = _as_kind(kind)
        for curve in curves:
            proj = pca_top2(curve_representations(kind, curve))
            for theta, (p1, p2) in zip(curve.thetas, proj):
                rows.append((kind.label, curve.axis_label, theta, p1, p2))
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["representation", "axis", "theta", "pc1", "pc2"])
        for label, axis, theta, p1, p2 in rows:
            writer.writerow([label, axis, csv_float(theta), csv_float(p1), csv_float(p2)])
    return out_path
