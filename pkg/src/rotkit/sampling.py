"""Random rotation samplers.

All samplers take an explicit ``numpy.random.Generator`` so callers own the
stream; none of them touch global state.
"""

import numpy as np

from .exceptions import DimensionMismatch
from .linalg import rotation_from_axis_angle


def sample_axis_angle(rng, size=None, angle_range=(0.0, np.pi)):
    """Rotations with axis uniform on the sphere and angle uniform on
    ``angle_range`` (default [0, pi], so axes cover the full sphere).

    This is NOT Haar-uniform on SO(3); it is the axis/angle sampling used by
    the autoencoder benchmark. Returns (3, 3) or (size, 3, 3).
    """
    count = 1 if size is None else int(size)
    axis = rng.standard_normal((count, 3))
    axis /= np.linalg.norm(axis, axis=1, keepdims=True)
    lo, hi = angle_range
    angle = rng.uniform(lo, hi, size=count)
    m = rotation_from_axis_angle(axis, angle)
    return m[0] if size is None else m


def sample_uniform_so3(rng, size=None):
    """Haar-uniform rotations on SO(3).

    A 4-vector of standard Gaussians is normalized to a unit quaternion and
    converted to a matrix; the Gaussian's rotational symmetry makes the
    quaternion uniform on the 3-sphere and the image Haar-uniform.
    Returns (3, 3) or (size, 3, 3).
    """
    from .representations import quat_f

    count = 1 if size is None else int(size)
    q = rng.standard_normal((count, 4))
    m = quat_f(q)
    return m[0] if size is None else m


def sample_uniform_so_n(n, rng, size=None):
    """Haar-uniform rotations on SO(n) via QR of a Gaussian matrix.

    The QR factor is sign-corrected with the diagonal of R (sign(0) := +1)
    to make the distribution uniform, then the final column is negated
    whenever the determinant comes out -1. Returns (n, n) or (size, n, n).
    """
    if n < 2:
        raise DimensionMismatch("n must be >= 2")
    count = 1 if size is None else int(size)
    a = rng.standard_normal((count, n, n))
    q, r = np.linalg.qr(a)
    d = np.diagonal(r, axis1=-2, axis2=-1).copy()
    d = np.where(d < 0, -1.0, 1.0)
    q = q * d[:, None, :]
    det = np.linalg.det(q)
    q[det < 0, :, -1] *= -1.0
    return q[0] if size is None else q
