"""Minimal reverse-mode differentiation on numpy arrays.

A Tensor wraps a float64 ndarray and remembers how it was produced; calling
:func:`backward` on a scalar result walks the recorded graph in reverse
topological order and accumulates gradients on every tensor with
``requires_grad``. Primitives operate row-wise on batches: vector inputs
have shape (batch, dim) and reductions keep the batch layout explicit.

Constant inputs (targets, network inputs) should be created with
:func:`constant` so their subgraphs are pruned from the backward pass.
"""

import numpy as np

from .exceptions import NearZeroInput

__all__ = [
    "Tensor", "constant", "parameter", "backward",
    "add", "sub", "mul", "neg", "scale", "add_const", "matmul",
    "cols", "concat", "sum_all", "sqrt", "reciprocal", "sin", "cos",
    "acos_clamped", "leaky_relu", "normalize_rows", "dot_rows", "cross_rows",
]


class Tensor:
    __slots__ = ("data", "grad", "parents", "bw", "requires_grad")

    def __init__(self, data, parents=(), bw=None, requires_grad=False):
        self.data = data if isinstance(data, np.ndarray) else np.asarray(data, dtype=np.float64)
        self.grad = None
        self.parents = parents
        self.bw = bw
        self.requires_grad = requires_grad

    @property
    def shape(self):
        return self.data.shape

    def _acc(self, g):
        self.grad = g if self.grad is None else self.grad + g

    def __repr__(self):
        return f"Tensor(shape={self.data.shape}, requires_grad={self.requires_grad})"


def constant(x):
    """Tensor that never receives a gradient."""
    return Tensor(np.asarray(x, dtype=np.float64))


def parameter(x):
    """Leaf tensor that accumulates a gradient (shares the array's memory)."""
    return Tensor(np.asarray(x, dtype=np.float64), requires_grad=True)


def _make(data, parents, bw):
    if any(p.requires_grad for p in parents):
        return Tensor(data, parents, bw, True)
    return Tensor(data)


def backward(root):
    """Accumulate gradients of ``root`` (a scalar) into every reachable
    tensor with requires_grad, in reverse topological order."""
    topo = []
    visited = set()
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            topo.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for p in node.parents:
            if p.requires_grad and id(p) not in visited:
                stack.append((p, False))
    root.grad = np.ones_like(root.data)
    for node in reversed(topo):
        if node.bw is not None and node.grad is not None:
            node.bw(node.grad)


def _unbroadcast(g, shape):
    if g.shape == shape:
        return g
    extra = g.ndim - len(shape)
    if extra:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, (gs, ss) in enumerate(zip(g.shape, shape)) if ss == 1 and gs != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    return g


# --- arithmetic -------------------------------------------------------------

def add(a, b):
    def bw(g):
        if a.requires_grad:
            a._acc(_unbroadcast(g, a.data.shape))
        if b.requires_grad:
            b._acc(_unbroadcast(g, b.data.shape))
    return _make(a.data + b.data, (a, b), bw)


def sub(a, b):
    def bw(g):
        if a.requires_grad:
            a._acc(_unbroadcast(g, a.data.shape))
        if b.requires_grad:
            b._acc(_unbroadcast(-g, b.data.shape))
    return _make(a.data - b.data, (a, b), bw)


def mul(a, b):
    def bw(g):
        if a.requires_grad:
            a._acc(_unbroadcast(g * b.data, a.data.shape))
        if b.requires_grad:
            b._acc(_unbroadcast(g * a.data, b.data.shape))
    return _make(a.data * b.data, (a, b), bw)


def neg(a):
    def bw(g):
        a._acc(-g)
    return _make(-a.data, (a,), bw)


def scale(a, c):
    """Multiply by a python float."""
    c = float(c)

    def bw(g):
        a._acc(g * c)
    return _make(a.data * c, (a,), bw)


def add_const(a, c):
    def bw(g):
        a._acc(g)
    return _make(a.data + float(c), (a,), bw)


def matmul(a, b):
    def bw(g):
        if a.requires_grad:
            a._acc(g @ b.data.T)
        if b.requires_grad:
            b._acc(a.data.T @ g)
    return _make(a.data @ b.data, (a, b), bw)


# --- structure --------------------------------------------------------------

def cols(a, i, j):
    """Slice columns [i:j) of a (batch, dim) tensor."""
    def bw(g):
        full = np.zeros_like(a.data)
        full[..., i:j] = g
        a._acc(full)
    return _make(a.data[..., i:j], (a,), bw)


def concat(parts):
    """Concatenate along the last axis."""
    sizes = [p.data.shape[-1] for p in parts]
    offsets = np.cumsum([0] + sizes)

    def bw(g):
        for p, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            if p.requires_grad:
                p._acc(g[..., lo:hi])
    return _make(np.concatenate([p.data for p in parts], axis=-1), tuple(parts), bw)


def sum_all(a):
    def bw(g):
        a._acc(np.full_like(a.data, float(g)))
    return _make(a.data.sum(), (a,), bw)


# --- elementwise nonlinearities ---------------------------------------------

def sqrt(a):
    y = np.sqrt(a.data)

    def bw(g):
        a._acc(g * (0.5 / y))
    return _make(y, (a,), bw)


def reciprocal(a):
    y = 1.0 / a.data

    def bw(g):
        a._acc(-g * y * y)
    return _make(y, (a,), bw)


def sin(a):
    def bw(g):
        a._acc(g * np.cos(a.data))
    return _make(np.sin(a.data), (a,), bw)


def cos(a):
    def bw(g):
        a._acc(-g * np.sin(a.data))
    return _make(np.cos(a.data), (a,), bw)


def acos_clamped(a, margin=0.0):
    """arccos of the input clipped to [-1 + margin, 1 - margin].

    The derivative is that of the composition: zero where the clip is
    active, -1/sqrt(1-x^2) elsewhere, so it stays finite everywhere when
    margin > 0.
    """
    lo, hi = -1.0 + margin, 1.0 - margin
    xc = np.clip(a.data, lo, hi)
    y = np.arccos(xc)

    def bw(g):
        inside = (a.data > lo) & (a.data < hi)
        d = np.where(inside, -1.0 / np.sqrt(np.maximum(1.0 - xc * xc, 1e-300)), 0.0)
        a._acc(g * d)
    return _make(y, (a,), bw)


def leaky_relu(a, slope=0.01):
    d = np.where(a.data >= 0, 1.0, slope)

    def bw(g):
        a._acc(g * d)
    return _make(a.data * d, (a,), bw)


# --- row-wise vector ops ----------------------------------------------------

def normalize_rows(a, min_norm=1e-12, err=NearZeroInput, what="input"):
    """Scale each row to unit norm; raises ``err`` if any row norm is at or
    below ``min_norm``."""
    n = np.linalg.norm(a.data, axis=-1, keepdims=True)
    if np.any(n <= min_norm):
        raise err(f"{what}: row norm <= {min_norm:g}")
    y = a.data / n

    def bw(g):
        a._acc((g - y * np.sum(g * y, axis=-1, keepdims=True)) / n)
    return _make(y, (a,), bw)


def dot_rows(a, b):
    """Row-wise dot product, keeping the trailing axis: (B, D) x (B, D) -> (B, 1)."""
    def bw(g):
        if a.requires_grad:
            a._acc(g * b.data)
        if b.requires_grad:
            b._acc(g * a.data)
    return _make(np.sum(a.data * b.data, axis=-1, keepdims=True), (a, b), bw)


def _cross3(u, v):
    out = np.empty_like(u)
    out[..., 0] = u[..., 1] * v[..., 2] - u[..., 2] * v[..., 1]
    out[..., 1] = u[..., 2] * v[..., 0] - u[..., 0] * v[..., 2]
    out[..., 2] = u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]
    return out


def cross_rows(a, b):
    """Row-wise 3D cross product."""
    def bw(g):
        if a.requires_grad:
            a._acc(_cross3(b.data, g))
        if b.requires_grad:
            b._acc(_cross3(g, a.data))
    return _make(_cross3(a.data, b.data), (a, b), bw)
