"""Rotation representation pairs.

Each representation is a pair of maps (g, f): g sends a rotation matrix to
a flat vector and f sends such vectors back to rotation matrices, with
f(g(M)) = M. The continuous family (Gram-Schmidt and its stereographically
projected reductions) is defined for any n >= 2; the classic 3- and
4-dimensional encodings (Euler, quaternion variants, axis-angle, Rodriguez
vectors) exist for n = 3 and all have discontinuity sets.

Conventions used throughout:

- Rotations are (..., n, n) float64 arrays, representations (..., D).
- Vectorized views gamma(M) of the first n-1 columns are concatenated
  column by column, so gamma[(c-1)*n : c*n] is column c.
- Quaternions are ordered (x, y, z, w).
- Wherever a sign function meets 0 the result is +1.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    DegenerateInput,
    DimensionMismatch,
    NearZeroAxis,
    NearZeroInput,
    NearZeroScale,
    ProjectionPole,
    RotkitError,
)
from . import kinds as K
from .linalg import DEGENERACY_EPS, NORM_EPS, determinant, rotation_from_axis_angle
from .validation import as_float_array, check_matrix_batch

_POLE_EPS = 1e-9
_ANGLE_EPS = 1e-7  # below this the rotation is treated as the identity
_PI_BAND = 1e-6  # |theta - pi| band where the axis is read off the diagonal


def _sgn_pos(x):
    """Sign with sgn(0) := +1."""
    return np.where(np.asarray(x) < 0, -1.0, 1.0)


def _norm_rows(u):
    return np.linalg.norm(u, axis=-1, keepdims=True)


def _unit_rows(u, eps, exc, what):
    norms = _norm_rows(u)
    if np.any(norms <= eps):
        raise exc(f"{what}: norm <= {eps:g}")
    return u / norms, norms


# ---------------------------------------------------------------------------
# 2D rotations
# ---------------------------------------------------------------------------

def twod_g(m):
    """First column (cos, sin) of a 2D rotation."""
    m = check_matrix_batch(m, n=2)
    return m[..., :, 0].copy()


def twod_f(r):
    r = as_float_array(r, "r")
    if r.shape[-1] != 2:
        raise DimensionMismatch("2D representation must have 2 components")
    v, _ = _unit_rows(r, NORM_EPS, NearZeroInput, "2D representation")
    c, s = v[..., 0], v[..., 1]
    m = np.empty(v.shape[:-1] + (2, 2))
    m[..., 0, 0] = c
    m[..., 0, 1] = -s
    m[..., 1, 0] = s
    m[..., 1, 1] = c
    return m


# ---------------------------------------------------------------------------
# Quaternions
# ---------------------------------------------------------------------------

_QUAT_T_EPS = 1e-14


def quat_g(m):
    """Two-case quaternion encoding of a 3D rotation.

    Away from the trace -1 set the (unnormalized) output is
    (M32-M23, M13-M31, M21-M12, t) with t = Tr(M)+1; on it, the output is
    built from the matrix diagonal with relative signs c_2, c_3. The
    diagonal branch is taken for t <= 1e-14 rather than t == 0 exactly:
    within sqrt(1e-14) of a 180 degree rotation the skew entries are all
    rounding dust, and the diagonal formula's own error there is below the
    1e-7 round-trip tolerance.
    """
    m = check_matrix_batch(m, n=3)
    tr = m[..., 0, 0] + m[..., 1, 1] + m[..., 2, 2]
    t = tr + 1.0
    top = np.stack(
        [
            m[..., 2, 1] - m[..., 1, 2],
            m[..., 0, 2] - m[..., 2, 0],
            m[..., 1, 0] - m[..., 0, 1],
            t,
        ],
        axis=-1,
    )
    sgn32 = _sgn_pos(m[..., 2, 1])

    def c_i(v, i):
        tie = sgn32 ** i
        return np.where(v > 0, 1.0, np.where(v < 0, -1.0, tie))

    c2 = c_i(m[..., 1, 0] + m[..., 0, 1], 2)
    c3 = c_i(m[..., 2, 0] + m[..., 0, 2], 3)
    bottom = np.stack(
        [
            np.sqrt(np.maximum(m[..., 0, 0] + 1.0, 0.0)),
            c2 * np.sqrt(np.maximum(m[..., 1, 1] + 1.0, 0.0)),
            c3 * np.sqrt(np.maximum(m[..., 2, 2] + 1.0, 0.0)),
            np.zeros_like(t),
        ],
        axis=-1,
    )
    return np.where(t[..., None] > 0, top, bottom)


def quat_f(r):
    """Normalize a 4-vector and apply the quaternion-to-matrix formula."""
    r = as_float_array(r, "r")
    if r.shape[-1] != 4:
        raise DimensionMismatch("quaternion representation must have 4 components")
    q, _ = _unit_rows(r, NORM_EPS, NearZeroInput, "quaternion")
    x, y, z, w = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    m = np.empty(q.shape[:-1] + (3, 3))
    m[..., 0, 0] = 1 - 2 * y * y - 2 * z * z
    m[..., 0, 1] = 2 * x * y - 2 * z * w
    m[..., 0, 2] = 2 * x * z + 2 * y * w
    m[..., 1, 0] = 2 * x * y + 2 * z * w
    m[..., 1, 1] = 1 - 2 * x * x - 2 * z * z
    m[..., 1, 2] = 2 * y * z - 2 * x * w
    m[..., 2, 0] = 2 * x * z - 2 * y * w
    m[..., 2, 1] = 2 * y * z + 2 * x * w
    m[..., 2, 2] = 1 - 2 * x * x - 2 * y * y
    return m


def unit_quat_g(m):
    """Unit quaternion via per-component square roots and copysign.

    Component magnitudes come from the diagonal, signs from the skew part
    (copysign(a, 0) = +a). Always has w >= 0 and unit norm.
    """
    m = check_matrix_batch(m, n=3)
    d0, d1, d2 = m[..., 0, 0], m[..., 1, 1], m[..., 2, 2]
    w = np.sqrt(np.maximum(1.0 + d0 + d1 + d2, 0.0)) / 2.0
    x = np.copysign(np.sqrt(np.maximum(1.0 + d0 - d1 - d2, 0.0)) / 2.0, m[..., 2, 1] - m[..., 1, 2])
    y = np.copysign(np.sqrt(np.maximum(1.0 - d0 + d1 - d2, 0.0)) / 2.0, m[..., 0, 2] - m[..., 2, 0])
    z = np.copysign(np.sqrt(np.maximum(1.0 - d0 - d1 + d2, 0.0)) / 2.0, m[..., 1, 0] - m[..., 0, 1])
    return np.stack([x, y, z, w], axis=-1)


def hemi_quat_g(m):
    """Unit quaternion constrained to the w >= 0 hemisphere.

    Ties at w = 0 are resolved by making the first nonzero component
    positive.
    """
    q = unit_quat_g(m)
    flat = q.reshape(-1, 4)
    w = flat[:, 3]
    flip = w < 0
    tie = w == 0
    if np.any(tie):
        rows = flat[tie]
        nonzero = np.abs(rows) > 0
        first = np.argmax(nonzero, axis=1)
        lead = rows[np.arange(rows.shape[0]), first]
        flip = flip.copy()
        flip[np.flatnonzero(tie)] = lead < 0
    flat = np.where(flip[:, None], -flat, flat)
    return flat.reshape(q.shape)


unit_quat_f = quat_f
hemi_quat_f = quat_f


# ---------------------------------------------------------------------------
# Axis-angle and Rodriguez vectors
# ---------------------------------------------------------------------------

def axis_angle_g(m):
    """Extract (axis, angle) with angle in [0, pi].

    The angle comes from the clamped trace. Away from the branch points the
    axis is the normalized skew part. Near theta = 0 the axis is e_1 by
    convention; within 1e-6 of pi the skew part vanishes, so component
    magnitudes are read off the diagonal of (M+I)/2 and signs off the skew
    and symmetric off-diagonal parts (sgn(0) := +1).
    """
    m = check_matrix_batch(m, n=3)
    tr = m[..., 0, 0] + m[..., 1, 1] + m[..., 2, 2]
    theta = np.arccos(np.clip((tr - 1.0) / 2.0, -1.0, 1.0))
    skew = np.stack(
        [
            m[..., 2, 1] - m[..., 1, 2],
            m[..., 0, 2] - m[..., 2, 0],
            m[..., 1, 0] - m[..., 0, 1],
        ],
        axis=-1,
    )

    # Generic branch: direction of the skew part.
    norms = _norm_rows(skew)
    safe = np.where(norms > 1e-300, norms, 1.0)
    axis = skew / safe

    # theta ~ pi: |w_i| = sqrt(((M+I)/2)_ii); relative signs from the
    # symmetric part M_ij + M_ji = 2(1-cos)w_i w_j, anchored at the largest
    # component; global flip aligned with the skew part where informative.
    mags = np.sqrt(np.maximum((np.stack([m[..., 0, 0], m[..., 1, 1], m[..., 2, 2]], axis=-1) + 1.0) / 2.0, 0.0))
    i0 = np.argmax(mags, axis=-1)
    flat_m = m.reshape(-1, 3, 3)
    flat_i0 = i0.reshape(-1)
    idx = np.arange(flat_m.shape[0])
    sym = flat_m + np.swapaxes(flat_m, -1, -2)
    rel = _sgn_pos(sym[idx, flat_i0, :])  # sign of w_i relative to w_i0
    rel[idx, flat_i0] = 1.0
    cand = (mags.reshape(-1, 3) * rel).reshape(mags.shape)
    cn = _norm_rows(cand)
    cand = cand / np.where(cn > 1e-300, cn, 1.0)
    orient = np.sum(skew * cand, axis=-1)
    informative = np.abs(orient) > 1e-12
    cand = cand * np.where(informative, _sgn_pos(orient), 1.0)[..., None]

    near_pi = np.abs(theta - np.pi) < _PI_BAND
    axis = np.where(near_pi[..., None], cand, axis)
    near_zero = theta < _ANGLE_EPS
    e1 = np.zeros_like(axis)
    e1[..., 0] = 1.0
    axis = np.where(near_zero[..., None], e1, axis)
    return np.concatenate([axis, theta[..., None]], axis=-1)


def axis_angle_f(r):
    """Rodrigues rotation formula on packed (axis, angle) 4-vectors.

    Angles <= 1e-12 map to the identity regardless of the axis part; for
    larger angles the axis part must have norm > 1e-12.
    """
    r = as_float_array(r, "r")
    if r.shape[-1] != 4:
        raise DimensionMismatch("axis-angle representation must have 4 components")
    axis, angle = r[..., :3], r[..., 3]
    norms = _norm_rows(axis)
    tiny_angle = np.abs(angle) <= NORM_EPS
    if np.any((norms[..., 0] <= NORM_EPS) & ~tiny_angle):
        raise NearZeroAxis("axis part has norm <= 1e-12 for a nonzero angle")
    e1 = np.zeros_like(axis)
    e1[..., 0] = 1.0
    safe_axis = np.where(norms <= NORM_EPS, e1, axis)
    safe_axis = safe_axis / _norm_rows(safe_axis)
    return rotation_from_axis_angle(safe_axis, angle)


def rodriguez_g(m):
    """Axis times angle, packed as one 3-vector."""
    aa = axis_angle_g(m)
    return aa[..., :3] * aa[..., 3:4]


def rodriguez_f(r):
    """Recover theta = |r| and the axis r/|r|; r = 0 maps to the identity."""
    r = as_float_array(r, "r")
    if r.shape[-1] != 3:
        raise DimensionMismatch("Rodriguez representation must have 3 components")
    theta = _norm_rows(r)
    e1 = np.zeros_like(r)
    e1[..., 0] = 1.0
    axis = np.where(theta <= NORM_EPS, e1, r / np.where(theta <= NORM_EPS, 1.0, theta))
    angle = np.where(theta[..., 0] <= NORM_EPS, 0.0, theta[..., 0])
    return rotation_from_axis_angle(axis, angle)


# ---------------------------------------------------------------------------
# Euler angles (intrinsic Z-Y-X)
# ---------------------------------------------------------------------------

_LOCK_EPS = 1e-14


def euler_f(r):
    """Compose R_z(alpha) @ R_y(beta) @ R_x(gamma)."""
    r = as_float_array(r, "r")
    if r.shape[-1] != 3:
        raise DimensionMismatch("Euler representation must have 3 components")
    a, b, g = r[..., 0], r[..., 1], r[..., 2]
    ca, sa = np.cos(a), np.sin(a)
    cb, sb = np.cos(b), np.sin(b)
    cg, sg = np.cos(g), np.sin(g)
    m = np.empty(r.shape[:-1] + (3, 3))
    m[..., 0, 0] = ca * cb
    m[..., 0, 1] = ca * sb * sg - sa * cg
    m[..., 0, 2] = ca * sb * cg + sa * sg
    m[..., 1, 0] = sa * cb
    m[..., 1, 1] = sa * sb * sg + ca * cg
    m[..., 1, 2] = sa * sb * cg - ca * sg
    m[..., 2, 0] = -sb
    m[..., 2, 1] = cb * sg
    m[..., 2, 2] = cb * cg
    return m


def euler_g(m):
    """Invert the Z-Y-X composition with beta in [-pi/2, pi/2].

    At gimbal lock (|beta| = pi/2, detected as |M31| within 1e-14 of 1)
    only alpha -/+ gamma is determined; gamma := 0 resolves the ambiguity.
    """
    m = check_matrix_batch(m, n=3)
    m20 = np.clip(m[..., 2, 0], -1.0, 1.0)
    beta = np.arcsin(-m20)
    alpha = np.arctan2(m[..., 1, 0], m[..., 0, 0])
    gamma = np.arctan2(m[..., 2, 1], m[..., 2, 2])

    lock = np.abs(m20) >= 1.0 - _LOCK_EPS
    if np.any(lock):
        up = m20 <= 0  # beta = +pi/2 branch
        alpha_lock = np.where(
            up,
            np.arctan2(-m[..., 0, 1], m[..., 0, 2]),
            np.arctan2(-m[..., 0, 1], -m[..., 0, 2]),
        )
        alpha = np.where(lock, alpha_lock, alpha)
        gamma = np.where(lock, 0.0, gamma)
    return np.stack([alpha, beta, gamma], axis=-1)


# ---------------------------------------------------------------------------
# Gram-Schmidt family for SO(n)
# ---------------------------------------------------------------------------

def _infer_n_from_gs_dim(d):
    n = int(round((1 + math.isqrt(1 + 4 * d)) / 2))
    if n * n - n != d:
        raise DimensionMismatch(f"representation length {d} is not n^2-n for any integer n")
    return n


def gram_schmidt_g(m):
    """Drop the last column; flatten the remaining n-1 columns column by
    column into a vector of length n^2 - n."""
    m = check_matrix_batch(m)
    n = m.shape[-1]
    return np.swapaxes(m[..., :, : n - 1], -1, -2).reshape(m.shape[:-2] + (n * n - n,))


def _generalized_cross_rows(bs):
    """Batched n-dimensional cross product of n-1 row batches (..., n)."""
    n = bs[0].shape[-1]
    cols = np.stack(bs, axis=-1)  # (..., n, n-1)
    comps = []
    for i in range(n):
        minor = np.delete(cols, i, axis=-2)
        comps.append((-1.0) ** (i + n + 1) * determinant(minor))
    return np.stack(comps, axis=-1)


def gram_schmidt_f(r, n=None):
    """Orthonormalize n-1 unpacked columns and complete the basis with the
    generalized cross product, yielding a matrix in SO(n).

    Raises DegenerateInput when any intermediate normalization sees a norm
    <= 1e-9 (the span-deficient set).
    """
    r = as_float_array(r, "r")
    if n is None:
        n = _infer_n_from_gs_dim(r.shape[-1])
    if r.shape[-1] != n * n - n:
        raise DimensionMismatch(f"expected length {n * n - n} for n={n}, got {r.shape[-1]}")
    cols = r.reshape(r.shape[:-1] + (n - 1, n))
    bs = []
    for i in range(n - 1):
        a = cols[..., i, :]
        for b in bs:
            a = a - np.sum(b * a, axis=-1, keepdims=True) * b
        b_i, _ = _unit_rows(a, DEGENERACY_EPS, DegenerateInput, f"column {i + 1} after orthogonalization")
        bs.append(b_i)
    bs.append(_generalized_cross_rows(bs))
    return np.stack(bs, axis=-1)


# ---------------------------------------------------------------------------
# Stereographic dimension reduction
# ---------------------------------------------------------------------------

def normalized_projection_p(u):
    """Normalize, then stereographically project from (1, 0, ..., 0):
    maps (..., m) to (..., m-1) via v_{2:} / (1 - v_1)."""
    u = as_float_array(u, "u")
    if u.shape[-1] < 2:
        raise DimensionMismatch("projection input must have dimension >= 2")
    v, _ = _unit_rows(u, NORM_EPS, NearZeroInput, "projection input")
    v1 = v[..., 0]
    if np.any(v1 >= 1.0 - _POLE_EPS):
        raise ProjectionPole("normalized input coincides with the projection point (1, 0, ..., 0)")
    return v[..., 1:] / (1.0 - v1[..., None])


def stereo_unprojection_q(u):
    """Stereographic un-projection onto the slice whose components 2..m
    form a unit vector: (..., m-1) -> (..., m)."""
    u = as_float_array(u, "u")
    if u.shape[-1] < 1:
        raise DimensionMismatch("un-projection input must have dimension >= 1")
    norm = _norm_rows(u)
    if np.any(norm <= NORM_EPS):
        raise NearZeroInput("un-projection input has norm <= 1e-12")
    first = 0.5 * (norm[..., 0] ** 2 - 1.0) / norm[..., 0]
    return np.concatenate([first[..., None], u / norm], axis=-1)


def projected_g(m):
    """Continuous representation of SO(n) in n^2-n-1 dimensions: the
    Gram-Schmidt vector with its last n+1 components replaced by their
    normalized projection."""
    m = check_matrix_batch(m)
    n = m.shape[-1]
    if n < 3:
        raise DimensionMismatch("projected representation requires n >= 3")
    gamma = gram_schmidt_g(m)
    cut = n * n - 2 * n - 1
    return np.concatenate([gamma[..., :cut], normalized_projection_p(gamma[..., cut:])], axis=-1)


def projected_f(r, n=None):
    """Un-project the last n components and run the orthonormalization."""
    r = as_float_array(r, "r")
    if n is None:
        d = r.shape[-1]
        n = _infer_n_from_gs_dim(d + 1)
    if r.shape[-1] != n * n - n - 1:
        raise DimensionMismatch(f"expected length {n * n - n - 1} for n={n}, got {r.shape[-1]}")
    cut = n * n - 2 * n - 1
    gamma = np.concatenate([r[..., :cut], stereo_unprojection_q(r[..., cut:])], axis=-1)
    return gram_schmidt_f(gamma, n)


def multi_projection_g(m, k):
    """Apply k normalized projections (1 <= k <= n-2) to the Gram-Schmidt
    vector. Projection i takes basis vector i+1 of gamma(M), prepends
    gamma_{n+1-i} (an element of the first basis vector), and projects.

    Output layout: the unconsumed prefix of column 1 (n-k entries), the k
    projections (n entries each), then the untouched columns k+2..n-1.
    """
    m = check_matrix_batch(m)
    n = m.shape[-1]
    if not 1 <= k <= n - 2:
        from .exceptions import InvalidK

        raise InvalidK(f"k={k} outside 1..{n - 2} for n={n}")
    gamma = gram_schmidt_g(m)
    parts = [gamma[..., : n - k]]
    for i in range(1, k + 1):
        group = np.concatenate(
            [gamma[..., n - i : n - i + 1], gamma[..., i * n : (i + 1) * n]], axis=-1
        )
        parts.append(normalized_projection_p(group))
    parts.append(gamma[..., (k + 1) * n :])
    return np.concatenate(parts, axis=-1)


def multi_projection_f(r, n, k):
    """Invert multi_projection_g: un-project each group, write the recovered
    prepended element back into its slot in the first basis vector, and run
    the orthonormalization."""
    r = as_float_array(r, "r")
    if not 1 <= k <= n - 2:
        from .exceptions import InvalidK

        raise InvalidK(f"k={k} outside 1..{n - 2} for n={n}")
    if r.shape[-1] != n * n - n - k:
        raise DimensionMismatch(f"expected length {n * n - n - k} for n={n}, k={k}")
    prefix = r[..., : n - k]
    gamma = np.zeros(r.shape[:-1] + (n * n - n,))
    gamma[..., : n - k] = prefix
    for i in range(1, k + 1):
        block = r[..., n - k + (i - 1) * n : n - k + i * n]
        q = stereo_unprojection_q(block)
        gamma[..., n - i] = q[..., 0]
        gamma[..., i * n : (i + 1) * n] = q[..., 1:]
    gamma[..., (k + 1) * n :] = r[..., n - k + k * n :]
    return gram_schmidt_f(gamma, n)


# ---------------------------------------------------------------------------
# O(n) and similarity transforms
# ---------------------------------------------------------------------------

def orthogonal_g(m):
    """Gram-Schmidt vector plus a trailing determinant indicator (+1/-1),
    extending the representation to the full orthogonal group."""
    m = check_matrix_batch(m)
    n = m.shape[-1]
    gram = np.swapaxes(m, -1, -2) @ m
    if np.abs(gram - np.eye(n)).max() > 1e-9:
        raise RotkitError("input is not orthogonal within 1e-9")
    s = _sgn_pos(determinant(m))
    return np.concatenate([gram_schmidt_g(m), s[..., None]], axis=-1)


def orthogonal_f(r, n=None):
    """Run the orthonormalization, then negate the last column where the
    indicator component is negative (sgn(0) := +1)."""
    r = as_float_array(r, "r")
    if n is None:
        n = _infer_n_from_gs_dim(r.shape[-1] - 1)
    if r.shape[-1] != n * n - n + 1:
        raise DimensionMismatch(f"expected length {n * n - n + 1} for n={n}")
    m = gram_schmidt_f(r[..., :-1], n)
    s = _sgn_pos(r[..., -1])
    m = m.copy()
    m[..., :, -1] *= s[..., None]
    return m


@dataclass(frozen=True)
class SimilarityTransform:
    """x -> scale * rotation @ x + translation, with scale > 0 and the
    rotation orthogonal with determinant +1."""

    scale: float
    rotation: np.ndarray = field(repr=False)
    translation: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rotation", as_float_array(self.rotation, "rotation"))
        object.__setattr__(self, "translation", as_float_array(self.translation, "translation"))
        n = self.translation.shape[0]
        if self.rotation.shape != (n, n):
            raise DimensionMismatch("rotation and translation dimensions disagree")
        if self.scale <= 0:
            raise NearZeroScale("scale must be positive")
        gram = self.rotation.T @ self.rotation
        if np.abs(gram - np.eye(n)).max() > 1e-9:
            raise RotkitError("rotation part is not orthogonal within 1e-9")

    @property
    def n(self):
        return self.translation.shape[0]

    def apply(self, x):
        x = as_float_array(x, "x")
        return self.scale * (x @ self.rotation.T) + self.translation


def similarity_g(t):
    """Store the unscaled first n-1 columns of scale*rotation (so the scale
    is recoverable as the norm of any stored column) followed by the
    translation. The rotation part must have determinant +1."""
    if not isinstance(t, SimilarityTransform):
        raise DimensionMismatch("expected a SimilarityTransform")
    if t.scale <= 1e-9:
        raise NearZeroScale("scale <= 1e-9")
    if determinant(t.rotation) < 0:
        raise DegenerateInput(
            "similarity representation requires a determinant +1 rotation part; "
            "use the orthogonal representation for reflections"
        )
    return np.concatenate([gram_schmidt_g(t.scale * t.rotation), t.translation])


def similarity_f(r, n=None):
    """Recover scale = |a_1|, orthonormalize, rescale, restore translation."""
    r = as_float_array(r, "r")
    if n is None:
        # length n^2: gamma part n^2-n plus translation n
        n = int(round(math.sqrt(r.shape[0])))
    if r.shape[-1] != n * n or r.ndim != 1:
        raise DimensionMismatch(f"expected a flat vector of length {n * n} for n={n}")
    gamma, u = r[: n * n - n], r[n * n - n :]
    alpha = float(np.linalg.norm(gamma[:n]))
    if alpha <= 1e-9:
        raise NearZeroScale("recovered scale <= 1e-9")
    rot = gram_schmidt_f(gamma, n)
    return SimilarityTransform(alpha, rot, u)


# ---------------------------------------------------------------------------
# Composition in representation space
# ---------------------------------------------------------------------------

def repr_compose(r1, r2, n=None):
    """Product of two Gram-Schmidt representations without a full round
    trip: f(r1) is an n x n matrix and r2 unpacks to n x (n-1), so the
    composed representation is their product, flattened."""
    r1 = as_float_array(r1, "r1")
    r2 = as_float_array(r2, "r2")
    if r1.shape[-1] != r2.shape[-1]:
        raise DimensionMismatch("operands must share a representation dimension")
    if n is None:
        n = _infer_n_from_gs_dim(r1.shape[-1])
    m1 = gram_schmidt_f(r1, n)
    cols2 = np.swapaxes(r2.reshape(r2.shape[:-1] + (n - 1, n)), -1, -2)
    prod = m1 @ cols2  # (..., n, n-1)
    return np.swapaxes(prod, -1, -2).reshape(r1.shape[:-1] + (n * n - n,))


# ---------------------------------------------------------------------------
# Raw-matrix baseline
# ---------------------------------------------------------------------------

def matrix_g(m):
    """Row-major flattening of the full matrix (the direct-regression
    baseline; f orthogonalizes)."""
    m = check_matrix_batch(m)
    n = m.shape[-1]
    return m.reshape(m.shape[:-2] + (n * n,)).copy()


def matrix_f(r, n=None):
    r = as_float_array(r, "r")
    if n is None:
        n = int(round(math.sqrt(r.shape[-1])))
    if r.shape[-1] != n * n:
        raise DimensionMismatch(f"expected length {n * n}")
    raw = r.reshape(r.shape[:-1] + (n, n))
    cols = np.swapaxes(raw[..., :, : n - 1], -1, -2).reshape(r.shape[:-1] + (n * n - n,))
    return gram_schmidt_f(cols, n)


# ---------------------------------------------------------------------------
# Kind dispatch
# ---------------------------------------------------------------------------

def pair_for_kind(kind):
    """Return (g, f) callables for a RepresentationKind."""
    tag, n, k = kind.tag, kind.n, kind.k
    if tag == K.TWO_D:
        return twod_g, twod_f
    if tag == K.EULER:
        return euler_g, euler_f
    if tag == K.QUATERNION:
        return quat_g, quat_f
    if tag == K.UNIT_QUATERNION:
        return unit_quat_g, unit_quat_f
    if tag == K.HEMI_QUATERNION:
        return hemi_quat_g, hemi_quat_f
    if tag == K.AXIS_ANGLE:
        return axis_angle_g, axis_angle_f
    if tag == K.RODRIGUEZ:
        return rodriguez_g, rodriguez_f
    if tag == K.GRAM_SCHMIDT:
        return gram_schmidt_g, lambda r: gram_schmidt_f(r, n)
    if tag == K.PROJECTED:
        # k = 1 uses the single-projection form (project the last n+1
        # components of gamma); k >= 2 uses the per-basis-vector grouping.
        # The two coincide for n = 3.
        if k == 1:
            return projected_g, lambda r: projected_f(r, n)
        return (lambda m: multi_projection_g(m, k)), (lambda r: multi_projection_f(r, n, k))
    if tag == K.ORTHOGONAL:
        return orthogonal_g, lambda r: orthogonal_f(r, n)
    if tag == K.MATRIX:
        return matrix_g, lambda r: matrix_f(r, n)
    if tag == K.SIMILARITY:
        return similarity_g, lambda r: similarity_f(r, n)
    raise RotkitError(f"no representation pair for tag {tag!r}")
