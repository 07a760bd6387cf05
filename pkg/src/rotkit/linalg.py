"""Small dense linear algebra: normalization, the n-dimensional cross
product, geodesic distance on SO(3), rotation constructors, Gram-Schmidt
orthogonalization of raw 3x3 outputs, and a deterministic 2-component PCA.

Matrices are plain float64 ndarrays. Functions accept batches through
leading dimensions where noted.
"""

import numpy as np

from .exceptions import DegenerateInput, DimensionMismatch, NearZeroInput
from .validation import as_float_array, check_matrix_batch, check_vector

NORM_EPS = 1e-12
# Inputs whose intermediate norms fall below this band are treated as
# span-deficient (the set D of the orthonormalization).
DEGENERACY_EPS = 1e-9


def normalize(u):
    """Scale ``u`` to unit Euclidean norm.

    Accepts a single vector or a batch (..., m); raises NearZeroInput if any
    row has norm <= 1e-12.
    """
    u = as_float_array(u, "u")
    norms = np.linalg.norm(u, axis=-1, keepdims=True)
    if np.any(norms <= NORM_EPS):
        raise NearZeroInput(f"cannot normalize vector with norm <= {NORM_EPS:g}")
    return u / norms


def _det2(m):
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def _det3(m):
    return (
        m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
        - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
        + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
    )


def _det4(m):
    out = np.zeros(m.shape[:-2])
    sign = 1.0
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        minor = m[..., 1:, :][..., :, cols]
        out = out + sign * m[..., 0, j] * _det3(minor)
        sign = -sign
    return out


def determinant(m):
    """Determinant of square matrices (..., n, n).

    Cofactor expansion for n <= 4, LU with partial pivoting (LAPACK) above.
    """
    m = check_matrix_batch(m, name="matrix")
    n = m.shape[-1]
    if n == 1:
        return m[..., 0, 0]
    if n == 2:
        return _det2(m)
    if n == 3:
        return _det3(m)
    if n == 4:
        return _det4(m)
    return np.linalg.det(m)


def generalized_cross(vs):
    """n-dimensional cross product of n-1 vectors of dimension n.

    Formal cofactor expansion of the determinant whose first n-1 columns are
    the inputs and whose last column is the canonical basis e_1..e_n: the
    i-th output component is the signed minor obtained by deleting row i.
    For orthonormal inputs the result completes a determinant +1 basis.
    """
    vs = [check_vector(v, name=f"vs[{i}]") for i, v in enumerate(vs)]
    if not vs:
        raise DimensionMismatch("need at least one input vector")
    n = vs[0].shape[0]
    if n < 2:
        raise DimensionMismatch("vectors must have dimension >= 2")
    if len(vs) != n - 1:
        raise DimensionMismatch(f"need {n - 1} vectors of dimension {n}, got {len(vs)}")
    cols = np.stack(vs, axis=1)  # (n, n-1)
    out = np.empty(n)
    for i in range(n):
        minor = np.delete(cols, i, axis=0)
        out[i] = (-1.0) ** (i + n + 1) * determinant(minor)
    return out


def geodesic_distance(m1, m2):
    """Minimal rotation angle between two 3x3 rotations, in [0, pi].

    acos((Tr(M1 M2^-1) - 1) / 2) with the argument clamped to [-1, 1];
    floating-point traces can exceed the bounds by ~1e-15. Batched over
    leading dimensions.
    """
    m1 = check_matrix_batch(m1, name="m1")
    m2 = check_matrix_batch(m2, name="m2")
    if m1.shape[-1] != 3 or m2.shape[-1] != 3:
        raise DimensionMismatch("geodesic distance is defined for 3x3 rotations")
    rel = m1 @ np.swapaxes(m2, -1, -2)
    tr = np.trace(rel, axis1=-2, axis2=-1)
    return np.arccos(np.clip((tr - 1.0) / 2.0, -1.0, 1.0))


def rotation_x(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rotation_y(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rotation_z(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotation_from_axis_angle(axis, angle):
    """Rodrigues rotation formula for a unit axis and angle in radians.

    Batched: axis (..., 3) with angle broadcastable to axis[..., 0].
    """
    axis = as_float_array(axis, "axis")
    angle = np.asarray(angle, dtype=np.float64)
    x, y, z = axis[..., 0], axis[..., 1], axis[..., 2]
    c = np.cos(angle)
    s = np.sin(angle)
    omc = 1.0 - c
    m = np.empty(np.broadcast_shapes(axis.shape[:-1], np.shape(angle)) + (3, 3))
    m[..., 0, 0] = c + x * x * omc
    m[..., 0, 1] = x * y * omc - z * s
    m[..., 0, 2] = x * z * omc + y * s
    m[..., 1, 0] = y * x * omc + z * s
    m[..., 1, 1] = c + y * y * omc
    m[..., 1, 2] = y * z * omc - x * s
    m[..., 2, 0] = z * x * omc - y * s
    m[..., 2, 1] = z * y * omc + x * s
    m[..., 2, 2] = c + z * z * omc
    return m


def orthogonalize_3x3(raw):
    """Project a raw 3x3 matrix onto SO(3) via Gram-Schmidt of its first two
    columns; the third column is discarded and rebuilt as a cross product.

    This is the post-process applied to direct 3x3 regressions. Raises
    DegenerateInput when the first two columns do not span a plane.
    """
    from .representations import gram_schmidt_f  # local import to avoid a cycle

    raw = check_matrix_batch(raw, n=3, name="raw")
    cols = np.swapaxes(raw[..., :, :2], -1, -2).reshape(raw.shape[:-2] + (6,))
    return gram_schmidt_f(cols, 3)


def pca_top2(points):
    """Project points onto their two leading principal components.

    Points are mean-centered and projected onto the two leading right
    singular vectors. Sign convention: the largest-magnitude entry of each
    component is made positive, so the output is deterministic.
    """
    pts = as_float_array(points, "points")
    if pts.ndim != 2:
        raise DimensionMismatch(f"points must be 2-D (count, dim), got shape {pts.shape}")
    count, dim = pts.shape
    if count < 3:
        raise DimensionMismatch("need at least 3 points")
    if dim < 2:
        raise DimensionMismatch("points must have dimension >= 2")
    centered = pts - pts.mean(axis=0)
    if np.abs(centered).max() <= 1e-15:
        raise DegenerateInput("all points identical")
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    comps = vt[:2]
    for i in range(2):
        j = np.argmax(np.abs(comps[i]))
        if comps[i, j] < 0:
            comps[i] = -comps[i]
    return centered @ comps.T
