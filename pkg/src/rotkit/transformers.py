"""scikit-learn style wrappers.

``RotationRepresenter`` exposes a representation pair as a stateless
transformer: ``transform`` applies g (rotations to vectors) and
``inverse_transform`` applies f (vectors back to rotations), so the maps
compose with pipelines and model-selection tooling via ``get_params``.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .exceptions import DimensionMismatch
from .kinds import kind_from_name
from .representations import pair_for_kind
from .validation import as_float_array, check_matrix_batch


class RotationRepresenter(TransformerMixin, BaseEstimator):
    """Map batches of rotation matrices to representation vectors and back.

    Parameters
    ----------
    kind : str
        Representation name ('gs6', 'p5', 'quat', 'unitquat', 'hemiquat',
        'axisangle', 'rodriguez', 'euler', 'twod', 'matrix', or the generic
        'gs'/'proj'/'ortho' tokens).
    n : int
        Group dimension for the generic tokens.
    k : int
        Projection count for 'proj'.
    """

    def __init__(self, kind="gs6", n=3, k=1):
        self.kind = kind
        self.n = n
        self.k = k

    def fit(self, X=None, y=None):
        self.kind_ = kind_from_name(self.kind, self.n, self.k)
        self.g_, self.f_ = pair_for_kind(self.kind_)
        self.n_features_out_ = self.kind_.dim
        return self

    def _check_fitted(self):
        if not hasattr(self, "kind_"):
            raise NotFittedError("call fit before transform/inverse_transform")

    def transform(self, X):
        """(N, n, n) rotation matrices -> (N, D) representation vectors."""
        self._check_fitted()
        X = check_matrix_batch(X, n=self.kind_.n, name="X")
        if X.ndim != 3:
            raise DimensionMismatch(f"X must have shape (N, n, n), got {X.shape}")
        return self.g_(X)

    def inverse_transform(self, R):
        """(N, D) representation vectors -> (N, n, n) rotation matrices."""
        self._check_fitted()
        R = as_float_array(R, "R")
        if R.ndim != 2 or R.shape[1] != self.kind_.dim:
            raise DimensionMismatch(
                f"R must have shape (N, {self.kind_.dim}) for kind {self.kind_.label!r}, got {R.shape}"
            )
        return self.f_(R)

    def reconstruction_error(self, X):
        """Max per-sample Frobenius error of f(g(X)) against X."""
        X = check_matrix_batch(X, name="X")
        back = self.inverse_transform(self.transform(X))
        return float(np.linalg.norm((back - X).reshape(X.shape[0], -1), axis=1).max())
