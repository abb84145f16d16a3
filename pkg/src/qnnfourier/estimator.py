"""scikit-learn estimator around the circuit families.

``QNNRegressor`` fits a 1-D periodic regression problem with one of the four
architectures and exposes the trained model's Fourier spectrum. It follows
the usual contract (constructor stores hyper-parameters verbatim, ``fit``
sets trailing-underscore attributes and returns ``self``), so it works with
``clone``, ``GridSearchCV`` and pipelines.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .arch import ArchitectureSpec, Family, evaluate_batch
from .spectrum import FourierSpectrum, model_spectrum, predicted_frequencies
from .train import TrainConfig, fit_params


def _check_feature(X, y=None):
    if y is None:
        X = check_array(X, ensure_2d=True, dtype=float)
    else:
        X, y = check_X_y(X, y, dtype=float, y_numeric=True)
    if X.shape[1] != 1:
        raise ValueError(f"QNNRegressor takes a single feature, got {X.shape[1]}")
    return X[:, 0], y


class QNNRegressor(RegressorMixin, BaseEstimator):
    """Angle-encoded quantum model ``f(x) = <Z>`` trained with parameter-shift Adam.

    Parameters
    ----------
    family : str
        ``"SequentialLinear"``, ``"SequentialExponential"``,
        ``"ParallelLinear"`` or ``"ParallelExponential"``.
    n : int
        Encoding repetitions (sequential) or qubits (parallel).
    var_depth : int or None
        Rot layers per variational block; ``None`` uses 3 for parallel and
        1 for sequential families.
    epochs, learning_rate, random_state
        Full-batch Adam settings; ``random_state`` seeds the uniform
        ``[0, 2pi)`` initialisation.
    """

    def __init__(
        self,
        family="ParallelExponential",
        n=2,
        var_depth=None,
        epochs=200,
        learning_rate=0.1,
        random_state=0,
    ):
        self.family = family
        self.n = n
        self.var_depth = var_depth
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.random_state = random_state

    def _spec(self) -> ArchitectureSpec:
        return ArchitectureSpec(Family(self.family), self.n, self.var_depth)

    def fit(self, X, y):
        x, y = _check_feature(X, y)
        if np.any(np.abs(y) > 1):
            raise ValueError("targets must lie in [-1, 1]; the model output is a Pauli expectation")
        spec = self._spec()
        seed = 0 if self.random_state is None else int(self.random_state)
        config = TrainConfig(epochs=self.epochs, learning_rate=self.learning_rate, seed=seed)
        result = fit_params(spec, x, y, config)
        self.spec_ = spec
        self.params_ = result.final_params
        self.loss_curve_ = result.loss_history
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "params_")
        x, _ = _check_feature(X)
        return evaluate_batch(self.spec_, self.params_, x)

    def fourier_spectrum(self) -> FourierSpectrum:
        check_is_fitted(self, "params_")
        return model_spectrum(self.spec_, self.params_)

    @property
    def frequencies_(self) -> list[int]:
        check_is_fitted(self, "params_")
        return predicted_frequencies(self.spec_)
