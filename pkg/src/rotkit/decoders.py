"""Differentiable decoders: tape re-implementations of each f map.

Each decoder takes a (batch, D) Tensor of representation vectors and
returns a (batch, 9) Tensor holding row-major flattened rotation matrices.
Values agree with the representations module within 1e-12; the two
implementations are kept independent so each can check the other.
"""

from . import autodiff as ad
from . import kinds as K
from .exceptions import DegenerateInput, NearZeroAxis, NearZeroInput, RotkitError
from .linalg import DEGENERACY_EPS, NORM_EPS


def _flat9(rows):
    """Row-major (batch, 9) from the nine (batch, 1) entry tensors."""
    return ad.concat(rows)


def _gs_from_columns(a1, a2):
    b1 = ad.normalize_rows(a1, DEGENERACY_EPS, DegenerateInput, "first column")
    proj = ad.mul(ad.dot_rows(b1, a2), b1)
    b2 = ad.normalize_rows(ad.sub(a2, proj), DEGENERACY_EPS, DegenerateInput, "second column")
    b3 = ad.cross_rows(b1, b2)
    rows = []
    for i in range(3):
        rows += [ad.cols(b1, i, i + 1), ad.cols(b2, i, i + 1), ad.cols(b3, i, i + 1)]
    return _flat9(rows)


def decode_gram_schmidt(r):
    """6D -> SO(3): orthonormalize two columns, complete by cross product."""
    return _gs_from_columns(ad.cols(r, 0, 3), ad.cols(r, 3, 6))


def decode_projected(r):
    """5D -> SO(3): stereographic un-projection of the last 3 components,
    then the 6D decoder."""
    tail = ad.cols(r, 2, 5)
    n2 = ad.dot_rows(tail, tail)
    if (n2.data <= NORM_EPS * NORM_EPS).any():
        raise NearZeroInput("un-projection input has norm <= 1e-12")
    norm = ad.sqrt(n2)
    inv = ad.reciprocal(norm)
    first = ad.scale(ad.sub(norm, inv), 0.5)
    gamma = ad.concat([ad.cols(r, 0, 2), first, ad.mul(tail, inv)])
    return _gs_from_columns(ad.cols(gamma, 0, 3), ad.cols(gamma, 3, 6))


def decode_quaternion(r):
    """4D -> SO(3): normalize, then the quaternion-to-matrix formula."""
    q = ad.normalize_rows(r, NORM_EPS, NearZeroInput, "quaternion")
    x, y, z, w = (ad.cols(q, i, i + 1) for i in range(4))
    xx, yy, zz = ad.mul(x, x), ad.mul(y, y), ad.mul(z, z)
    xy, xz, yz = ad.mul(x, y), ad.mul(x, z), ad.mul(y, z)
    xw, yw, zw = ad.mul(x, w), ad.mul(y, w), ad.mul(z, w)

    def diag(p, q2):
        return ad.add_const(ad.scale(ad.add(p, q2), -2.0), 1.0)

    def off(p, q2, sign):
        return ad.scale(ad.add(p, ad.scale(q2, sign)), 2.0)

    return _flat9([
        diag(yy, zz), off(xy, zw, -1.0), off(xz, yw, +1.0),
        off(xy, zw, +1.0), diag(xx, zz), off(yz, xw, -1.0),
        off(xz, yw, -1.0), off(yz, xw, +1.0), diag(xx, yy),
    ])


def _rodrigues_entries(x, y, z, c, s):
    omc = ad.add_const(ad.neg(c), 1.0)

    def d(p):
        return ad.add(c, ad.mul(ad.mul(p, p), omc))

    def o(p, q, rr, sign):
        return ad.add(ad.mul(ad.mul(p, q), omc), ad.scale(ad.mul(rr, s), sign))

    return _flat9([
        d(x), o(x, y, z, -1.0), o(x, z, y, +1.0),
        o(y, x, z, +1.0), d(y), o(y, z, x, -1.0),
        o(z, x, y, -1.0), o(z, y, x, +1.0), d(z),
    ])


def decode_axis_angle(r):
    """(axis, angle) -> SO(3) via the Rodrigues formula; the axis part is
    normalized first."""
    axis = ad.normalize_rows(ad.cols(r, 0, 3), NORM_EPS, NearZeroAxis, "axis part")
    ang = ad.cols(r, 3, 4)
    x, y, z = (ad.cols(axis, i, i + 1) for i in range(3))
    return _rodrigues_entries(x, y, z, ad.cos(ang), ad.sin(ang))


def decode_rodriguez(r):
    """Axis-times-angle 3-vector -> SO(3); theta = |r|, axis = r / theta."""
    n2 = ad.dot_rows(r, r)
    if (n2.data <= NORM_EPS * NORM_EPS).any():
        raise NearZeroInput("Rodriguez vector has norm <= 1e-12")
    theta = ad.sqrt(n2)
    axis = ad.mul(r, ad.reciprocal(theta))
    x, y, z = (ad.cols(axis, i, i + 1) for i in range(3))
    return _rodrigues_entries(x, y, z, ad.cos(theta), ad.sin(theta))


def decode_euler(r):
    """Intrinsic Z-Y-X Euler angles -> SO(3)."""
    a, b, g = (ad.cols(r, i, i + 1) for i in range(3))
    ca, sa = ad.cos(a), ad.sin(a)
    cb, sb = ad.cos(b), ad.sin(b)
    cg, sg = ad.cos(g), ad.sin(g)
    return _flat9([
        ad.mul(ca, cb),
        ad.sub(ad.mul(ad.mul(ca, sb), sg), ad.mul(sa, cg)),
        ad.add(ad.mul(ad.mul(ca, sb), cg), ad.mul(sa, sg)),
        ad.mul(sa, cb),
        ad.add(ad.mul(ad.mul(sa, sb), sg), ad.mul(ca, cg)),
        ad.sub(ad.mul(ad.mul(sa, sb), cg), ad.mul(ca, sg)),
        ad.neg(sb),
        ad.mul(cb, sg),
        ad.mul(cb, cg),
    ])


def decode_matrix(r):
    """Raw 9D -> SO(3): Gram-Schmidt of the first two columns (the third is
    discarded), mirroring the direct-regression post-process."""
    a1 = ad.concat([ad.cols(r, 0, 1), ad.cols(r, 3, 4), ad.cols(r, 6, 7)])
    a2 = ad.concat([ad.cols(r, 1, 2), ad.cols(r, 4, 5), ad.cols(r, 7, 8)])
    return _gs_from_columns(a1, a2)


_DECODERS = {
    K.GRAM_SCHMIDT: decode_gram_schmidt,
    K.PROJECTED: decode_projected,
    K.QUATERNION: decode_quaternion,
    K.UNIT_QUATERNION: decode_quaternion,
    K.HEMI_QUATERNION: decode_quaternion,
    K.AXIS_ANGLE: decode_axis_angle,
    K.RODRIGUEZ: decode_rodriguez,
    K.EULER: decode_euler,
    K.MATRIX: decode_matrix,
}


def decoder_for_kind(kind):
    """Differentiable decoder for an SO(3) representation kind."""
    if kind.n != 3:
        raise RotkitError("differentiable decoders are implemented for n=3 kinds")
    if kind.tag == K.PROJECTED and kind.k != 1:
        raise RotkitError("no differentiable decoder for k > 1 projections at n=3")
    try:
        return _DECODERS[kind.tag]
    except KeyError:
        raise RotkitError(f"no differentiable decoder for kind {kind.label!r}") from None


def decoder_forward(kind, r):
    """Decode a (batch, D) Tensor to (batch, 9) row-major rotation entries."""
    return decoder_for_kind(kind)(r)
