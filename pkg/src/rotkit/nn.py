"""Encoder MLP, losses, and the Adam optimizer for the rotation
autoencoder: a four-layer fully-connected network (9 -> 128 -> 128 -> 128
-> D) with Leaky ReLU hidden activations feeding a fixed differentiable
decoder.

Checkpoint format (stable, version-tagged): an ``.npz`` archive with a
0-d ``format_version`` entry and, per layer i, row-major float64 arrays
``layer{i}_weight`` of shape (fan_in, fan_out) and ``layer{i}_bias`` of
shape (fan_out,).
"""

from dataclasses import dataclass, field

import numpy as np

from . import autodiff as ad
from .exceptions import DimensionMismatch, RotkitError

INPUT_DIM = 9
HIDDEN_DIM = 128
CHECKPOINT_VERSION = 1


@dataclass
class MlpModel:
    weights: list  # per layer, shape (fan_in, fan_out)
    biases: list  # per layer, shape (fan_out,)
    leaky_slope: float = 0.01

    @property
    def out_dim(self):
        return self.weights[-1].shape[1]

    def copy(self):
        return MlpModel([w.copy() for w in self.weights], [b.copy() for b in self.biases], self.leaky_slope)


def init_mlp(out_dim, rng, hidden=HIDDEN_DIM, input_dim=INPUT_DIM, leaky_slope=0.01):
    """Initialize weights and biases uniform on +/- sqrt(1/fan_in)."""
    sizes = [input_dim, hidden, hidden, hidden, out_dim]
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        bound = np.sqrt(1.0 / fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(rng.uniform(-bound, bound, size=fan_out))
    return MlpModel(weights, biases, leaky_slope)


def mlp_forward(model, x):
    """Tape forward pass: x is a (batch, 9) Tensor; returns ((batch, D)
    Tensor, parameter Tensors in layer order) so callers can read
    gradients after backward."""
    params = []
    h = x
    last = len(model.weights) - 1
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        wt, bt = ad.parameter(w), ad.parameter(b)
        params += [wt, bt]
        h = ad.add(ad.matmul(h, wt), bt)
        if i != last:
            h = ad.leaky_relu(h, model.leaky_slope)
    return h, params


def mlp_forward_np(model, x):
    """Plain-numpy forward pass for evaluation; same values as the tape."""
    h = np.asarray(x, dtype=np.float64)
    last = len(model.weights) - 1
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        h = h @ w + b
        if i != last:
            h = np.where(h >= 0, h, model.leaky_slope * h)
    return h


# ---------------------------------------------------------------------------
# Losses (batch-mean; operate on row-major (batch, 9) flattened matrices)
# ---------------------------------------------------------------------------

GEODESIC_CLAMP_MARGIN = 1e-7


def loss_l2(pred9, true9):
    """Mean squared Frobenius distance between predicted and target
    matrices: sum of squared entry differences averaged over the batch."""
    d = ad.sub(pred9, true9)
    batch = pred9.data.shape[0]
    return ad.scale(ad.sum_all(ad.mul(d, d)), 1.0 / batch)


def loss_geodesic(pred9, true9):
    """Batch-mean geodesic angle between predicted and target rotations.

    Tr(M M'^T) is the row-wise dot product of the flattened matrices; the
    acos argument is clamped to [-1 + 1e-7, 1 - 1e-7] so the gradient stays
    finite (|d acos| <= ~2.2e3). Identical matrices therefore evaluate to
    acos(1 - 1e-7) ~ 4.47e-4 rad, not 0.
    """
    tr = ad.dot_rows(pred9, true9)
    cos_angle = ad.scale(ad.add_const(tr, -1.0), 0.5)
    ang = ad.acos_clamped(cos_angle, GEODESIC_CLAMP_MARGIN)
    batch = pred9.data.shape[0]
    return ad.scale(ad.sum_all(ang), 1.0 / batch)


LOSSES = {"l2": loss_l2, "geodesic": loss_geodesic}


# ---------------------------------------------------------------------------
# Adam
# ---------------------------------------------------------------------------

@dataclass
class AdamState:
    m: list = field(default_factory=list)
    v: list = field(default_factory=list)
    step: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    lr_initial: float = 1e-5
    lr_after: float = 1e-6
    lr_switch_iteration: int = 10_000

    @classmethod
    def for_model(cls, model, **kwargs):
        params = list(model.weights) + list(model.biases)
        return cls(
            m=[np.zeros_like(p) for p in params],
            v=[np.zeros_like(p) for p in params],
            **kwargs,
        )

    def learning_rate(self):
        """Rate for the upcoming step; the switch happens once
        ``lr_switch_iteration`` steps have been taken."""
        return self.lr_initial if self.step < self.lr_switch_iteration else self.lr_after


def adam_step(model, grads, state):
    """One Adam update, in place. ``grads`` are ordered like
    model.weights + model.biases; returns (model, state)."""
    params = list(model.weights) + list(model.biases)
    if len(grads) != len(params):
        raise DimensionMismatch("gradient count does not match parameter count")
    lr = state.learning_rate()
    state.step += 1
    t = state.step
    b1, b2 = state.beta1, state.beta2
    c1 = 1.0 - b1 ** t
    c2 = 1.0 - b2 ** t
    for p, g, m, v in zip(params, grads, state.m, state.v):
        if g.shape != p.shape:
            raise DimensionMismatch("gradient shape does not match parameter shape")
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * (g * g)
        p -= lr * (m / c1) / (np.sqrt(v / c2) + state.eps)
    return model, state


# ---------------------------------------------------------------------------
# Checkpoints
# ---------------------------------------------------------------------------

def save_checkpoint(model, path):
    arrays = {"format_version": np.int64(CHECKPOINT_VERSION), "leaky_slope": np.float64(model.leaky_slope)}
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        arrays[f"layer{i}_weight"] = np.ascontiguousarray(w, dtype=np.float64)
        arrays[f"layer{i}_bias"] = np.ascontiguousarray(b, dtype=np.float64)
    np.savez(path, **arrays)


def load_checkpoint(path):
    with np.load(path) as data:
        version = int(data["format_version"])
        if version != CHECKPOINT_VERSION:
            raise RotkitError(f"unsupported checkpoint version {version}")
        weights, biases = [], []
        i = 0
        while f"layer{i}_weight" in data:
            weights.append(np.array(data[f"layer{i}_weight"], dtype=np.float64))
            biases.append(np.array(data[f"layer{i}_bias"], dtype=np.float64))
            i += 1
        if not weights:
            raise RotkitError("checkpoint holds no layers")
        return MlpModel(weights, biases, float(data["leaky_slope"]))
