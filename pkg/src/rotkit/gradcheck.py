"""Finite-difference verification of the tape gradients.

The analytic gradient of loss(decoder(r), target) with respect to r is
compared against central differences of an independent numpy evaluation
(the representations-module f plus a plain-numpy loss). Sample points are
rejected if they sit within 1e-3 of a decoder degeneracy band, where the
maps are legitimately non-smooth.
"""

import numpy as np

from . import autodiff as ad
from . import kinds as K
from .decoders import decoder_for_kind
from .kinds import kind_from_name
from .nn import GEODESIC_CLAMP_MARGIN, LOSSES
from .representations import pair_for_kind, stereo_unprojection_q
from .sampling import sample_uniform_so3

REJECT_MARGIN = 1e-3


def _gs_margin(a1, a2):
    n1 = np.linalg.norm(a1)
    if n1 <= 0:
        return 0.0
    b1 = a1 / n1
    n2 = np.linalg.norm(a2 - np.dot(b1, a2) * b1)
    return min(n1, n2)


def degeneracy_margin(kind, r):
    """Distance of r to the nearest decoder degeneracy band (norms that
    feed normalizations); +inf for kinds without one."""
    tag = kind.tag
    if tag == K.GRAM_SCHMIDT:
        return _gs_margin(r[0:3], r[3:6])
    if tag == K.PROJECTED:
        tail = r[2:5]
        nt = np.linalg.norm(tail)
        if nt <= 0:
            return 0.0
        q = stereo_unprojection_q(tail)
        gamma = np.concatenate([r[0:2], q])
        return min(nt, _gs_margin(gamma[0:3], gamma[3:6]))
    if tag in (K.QUATERNION, K.UNIT_QUATERNION, K.HEMI_QUATERNION, K.RODRIGUEZ):
        return float(np.linalg.norm(r))
    if tag == K.AXIS_ANGLE:
        return float(np.linalg.norm(r[0:3]))
    if tag == K.MATRIX:
        return _gs_margin(r[[0, 3, 6]], r[[1, 4, 7]])
    return np.inf


def _loss_np(loss_name, pred9, true9):
    if loss_name == "l2":
        return float(np.sum((pred9 - true9) ** 2) / pred9.shape[0])
    tr = np.sum(pred9 * true9, axis=-1)
    x = np.clip((tr - 1.0) / 2.0, -1.0 + GEODESIC_CLAMP_MARGIN, 1.0 - GEODESIC_CLAMP_MARGIN)
    return float(np.mean(np.arccos(x)))


def decoder_loss_np(kind, loss_name, r, target9):
    """Independent numpy evaluation of loss(f(r), target)."""
    _, f = pair_for_kind(kind)
    pred9 = f(r[None, :]).reshape(1, 9)
    return _loss_np(loss_name, pred9, target9[None, :])


def decoder_loss_grad(kind, loss_name, r, target9):
    """Tape evaluation: (loss value, d loss / d r)."""
    rt = ad.parameter(r.copy()[None, :])
    pred = decoder_for_kind(kind)(rt)
    loss = LOSSES[loss_name](pred, ad.constant(target9[None, :]))
    ad.backward(loss)
    return float(loss.data), rt.grad[0]


def finite_difference_gradient(fun, r, h=1e-5):
    """Central differences of a scalar function of a flat vector."""
    grad = np.empty_like(r)
    for i in range(r.size):
        rp, rm = r.copy(), r.copy()
        rp[i] += h
        rm[i] -= h
        grad[i] = (fun(rp) - fun(rm)) / (2.0 * h)
    return grad


def gradcheck_kind(kind, loss_name, n_points, rng, h=1e-5):
    """Max relative error between analytic and finite-difference gradients
    over ``n_points`` random representation vectors."""
    kind = kind_from_name(kind) if isinstance(kind, str) else kind
    worst = 0.0
    produced = 0
    while produced < n_points:
        r = rng.standard_normal(kind.dim)
        if degeneracy_margin(kind, r) < REJECT_MARGIN:
            continue
        target = sample_uniform_so3(rng).reshape(9)
        if loss_name == "geodesic":
            # stay away from the acos clamp boundary, where the derivative
            # jumps to zero by construction
            _, f = pair_for_kind(kind)
            cos_angle = (np.sum(f(r[None, :]).reshape(9) * target) - 1.0) / 2.0
            if 1.0 - abs(cos_angle) < REJECT_MARGIN:
                continue
        _, ga = decoder_loss_grad(kind, loss_name, r, target)
        gfd = finite_difference_gradient(
            lambda v: decoder_loss_np(kind, loss_name, v, target), r, h
        )
        denom = max(float(np.abs(gfd).max()), 1e-8)
        rel = float(np.abs(ga - gfd).max()) / denom
        worst = max(worst, rel)
        produced += 1
    return worst
