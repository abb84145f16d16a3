import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.model_selection import GridSearchCV

from qnnfourier.estimator import QNNRegressor
from qnnfourier.train import top_hat_dataset


def test_params_round_trip():
    est = QNNRegressor(family="SequentialLinear", n=3, epochs=5)
    params = est.get_params()
    assert params["family"] == "SequentialLinear" and params["n"] == 3 and params["var_depth"] is None
    assert clone(est).get_params() == params
    est.set_params(n=1)
    assert est.n == 1


def test_fit_predict():
    data = top_hat_dataset(40)
    X = data.xs[:, None]
    est = QNNRegressor(family="SequentialExponential", n=2, epochs=30, random_state=1).fit(X, data.ys)
    pred = est.predict(X)
    assert pred.shape == (40,)
    assert np.all(np.abs(pred) <= 1 + 1e-12)
    assert est.loss_curve_[-1] < est.loss_curve_[0]
    assert est.frequencies_ == [1, 2, 3, 4]
    assert est.fourier_spectrum().k_max == 4
    # unsorted input is fine for the estimator
    perm = np.random.default_rng(0).permutation(40)
    est2 = QNNRegressor(family="SequentialExponential", n=2, epochs=30, random_state=1).fit(X[perm], data.ys[perm])
    assert np.allclose(est2.predict(X), pred, atol=1e-10)


def test_not_fitted_and_validation():
    est = QNNRegressor(epochs=1)
    with pytest.raises(NotFittedError):
        est.predict([[0.0]])
    with pytest.raises(ValueError):
        est.fit(np.zeros((4, 2)), np.zeros(4))
    with pytest.raises(ValueError):
        est.fit(np.zeros((4, 1)), np.full(4, 3.0))
    with pytest.raises(ValueError):
        QNNRegressor(family="Bogus").fit([[0.0], [1.0]], [0.0, 1.0])


def test_grid_search_composes():
    data = top_hat_dataset(24)
    grid = GridSearchCV(
        QNNRegressor(family="SequentialLinear", epochs=5), {"n": [1, 2]}, cv=2, scoring="neg_mean_squared_error"
    )
    grid.fit(data.xs[:, None], data.ys)
    assert grid.best_params_["n"] in (1, 2)
