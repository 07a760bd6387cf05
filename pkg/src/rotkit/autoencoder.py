"""Rotation autoencoder estimator.

An MLP encoder trained against the fixed decoder of the chosen
representation, wrapped as a scikit-learn estimator: ``fit`` trains,
``predict`` reconstructs rotations through the learned representation, and
``score`` returns the negative mean geodesic error in degrees.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .experiments import ExperimentConfig, evaluate_errors_deg, train_kind
from .kinds import kind_from_name
from .nn import load_checkpoint, mlp_forward_np, save_checkpoint
from .representations import pair_for_kind
from .validation import check_rotation_matrix


class RotationAutoencoder(BaseEstimator):
    def __init__(
        self,
        kind="gs6",
        loss="l2",
        iterations=2_000,
        batch_size=64,
        lr_initial=1e-5,
        lr_after=1e-6,
        lr_switch_iteration=10_000,
        sampler="axis_angle",
        test_set_size=1_000,
        eval_every=500,
        leaky_slope=0.01,
        seed=0,
    ):
        self.kind = kind
        self.loss = loss
        self.iterations = iterations
        self.batch_size = batch_size
        self.lr_initial = lr_initial
        self.lr_after = lr_after
        self.lr_switch_iteration = lr_switch_iteration
        self.sampler = sampler
        self.test_set_size = test_set_size
        self.eval_every = eval_every
        self.leaky_slope = leaky_slope
        self.seed = seed

    def _config(self):
        return ExperimentConfig(
            kinds=(self.kind,),
            loss=self.loss,
            sampler=self.sampler,
            iterations=self.iterations,
            batch_size=self.batch_size,
            lr_initial=self.lr_initial,
            lr_after=self.lr_after,
            lr_switch_iteration=self.lr_switch_iteration,
            test_set_size=self.test_set_size,
            eval_every=self.eval_every,
            leaky_slope=self.leaky_slope,
            seed=self.seed,
        )

    def fit(self, X=None, y=None):
        """Train the encoder. Rotations are sampled from the configured
        sampler; X is accepted for pipeline compatibility and ignored."""
        self.report_, self.model_ = train_kind(self._config(), self.kind)
        self.kind_ = kind_from_name(self.kind)
        return self

    def _check_fitted(self):
        if not hasattr(self, "model_"):
            raise NotFittedError("call fit before using the autoencoder")

    def encode(self, X):
        """(N, 3, 3) rotations -> (N, D) learned representation vectors."""
        self._check_fitted()
        X = check_rotation_matrix(X, n=3, name="X")
        return mlp_forward_np(self.model_, X.reshape(X.shape[0], 9))

    def predict(self, X):
        """Reconstruct rotations: decode the learned representation."""
        _, f = pair_for_kind(self.kind_)
        return f(self.encode(X))

    def score(self, X, y=None):
        """Negative mean geodesic reconstruction error in degrees."""
        self._check_fitted()
        X = check_rotation_matrix(X, n=3, name="X")
        errors, _ = evaluate_errors_deg(self.model_, self.kind_, X)
        return -float(np.mean(errors))

    def save(self, path):
        self._check_fitted()
        save_checkpoint(self.model_, path)

    def load(self, path):
        """Load encoder weights from a checkpoint written by ``save``."""
        self.model_ = load_checkpoint(path)
        self.kind_ = kind_from_name(self.kind)
        if self.model_.out_dim != self.kind_.dim:
            from .exceptions import DimensionMismatch

            raise DimensionMismatch(
                f"checkpoint output width {self.model_.out_dim} does not match "
                f"kind {self.kind!r} (D={self.kind_.dim})"
            )
        return self
