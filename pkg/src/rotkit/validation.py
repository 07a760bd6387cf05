"""Input validation helpers.

All public entry points funnel array inputs through these checks so that
shape or finiteness problems fail loudly with a domain error instead of
propagating NaNs.
"""

import numpy as np

from .exceptions import DimensionMismatch, RotkitError

# Tolerances for the rotation-matrix invariants: ||M^T M - I||_inf and |det - 1|.
ORTHO_TOL = 1e-9
DET_TOL = 1e-9


def as_float_array(a, name="array"):
    """Return ``a`` as a float64 ndarray, rejecting non-finite entries."""
    out = np.asarray(a, dtype=np.float64)
    if not np.all(np.isfinite(out)):
        raise RotkitError(f"{name} contains non-finite entries")
    return out


def check_vector(u, dim=None, name="vector"):
    """Validate a 1-D float vector, optionally of fixed dimension."""
    u = as_float_array(u, name)
    if u.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {u.shape}")
    if dim is not None and u.shape[0] != dim:
        raise DimensionMismatch(f"{name} must have dimension {dim}, got {u.shape[0]}")
    return u


def check_square_matrix(m, n=None, name="matrix"):
    """Validate a single n x n matrix."""
    m = as_float_array(m, name)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    if n is not None and m.shape[0] != n:
        raise DimensionMismatch(f"{name} must be {n}x{n}, got {m.shape[0]}x{m.shape[1]}")
    return m


def check_matrix_batch(m, n=None, name="rotations"):
    """Validate a batch of square matrices with shape (..., n, n)."""
    m = as_float_array(m, name)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimensionMismatch(f"{name} must have shape (..., n, n), got {m.shape}")
    if n is not None and m.shape[-1] != n:
        raise DimensionMismatch(f"{name} must be {n}x{n} matrices, got {m.shape[-2:]}")
    return m


def is_rotation_matrix(m, ortho_tol=ORTHO_TOL, det_tol=DET_TOL):
    """True where each matrix in the batch satisfies the SO(n) invariants."""
    m = check_matrix_batch(m)
    n = m.shape[-1]
    gram = np.swapaxes(m, -1, -2) @ m
    ortho_err = np.abs(gram - np.eye(n)).max(axis=(-1, -2))
    det_err = np.abs(np.linalg.det(m) - 1.0)
    return (ortho_err <= ortho_tol) & (det_err <= det_tol)


def check_rotation_matrix(m, n=None, name="rotation"):
    """Validate a batch of rotation matrices against the SO(n) invariants."""
    m = check_matrix_batch(m, n=n, name=name)
    ok = is_rotation_matrix(m)
    if not np.all(ok):
        bad = int(np.sum(~np.atleast_1d(ok)))
        raise RotkitError(
            f"{name}: {bad} matrix(es) violate the SO(n) invariants "
            f"(orthogonality within {ORTHO_TOL:g}, determinant within {DET_TOL:g} of 1)"
        )
    return m
