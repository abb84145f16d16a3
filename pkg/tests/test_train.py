import numpy as np
import pytest

from oracles import optimal_truncated_mse
from qnnfourier.arch import ArchitectureSpec, Family, parameter_count
from qnnfourier.spectrum import model_spectrum
from qnnfourier.train import (
    AdamState,
    Dataset,
    TrainConfig,
    adam_step,
    mse_loss,
    parameter_shift_gradient,
    top_hat_dataset,
    train,
)


def test_top_hat():
    data = top_hat_dataset(100)
    assert len(data) == 100
    assert data.xs[0] == 0.0 and data.xs[-1] < 2 * np.pi
    assert data.ys[50] == 1.0  # x = pi
    assert data.ys[0] == 0.0
    assert data.ys[25] == 1.0 and data.ys[75] == 0.0  # [pi/2, 3pi/2)
    assert data.ys.sum() == 50
    with pytest.raises(ValueError):
        top_hat_dataset(1)


def test_dataset_validation():
    with pytest.raises(ValueError):
        Dataset([0.0, 0.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        Dataset([0.0, 1.0], [0.0])
    with pytest.raises(ValueError):
        Dataset([0.0, 1.0], [0.0, 2.0])


def test_mse_examples():
    spec = ArchitectureSpec("SequentialLinear", 1)
    ones = Dataset(np.linspace(0, 6, 10), np.ones(10))
    assert mse_loss(spec, np.zeros(6), ones) == pytest.approx(0.0, abs=1e-15)
    # RY(pi/2) puts |0> on the equator; later RZ gates keep <Z> = 0
    zero_model = np.array([0, np.pi / 2, 0, 0, 0, 0])
    for n in (4, 8, 100):
        data = top_hat_dataset(n)
        assert mse_loss(spec, zero_model, data) == pytest.approx(0.5, abs=1e-12)


def test_mse_permutation_invariant():
    spec = ArchitectureSpec("ParallelLinear", 2)
    params = np.random.default_rng(0).uniform(0, 6, parameter_count(spec))
    data = top_hat_dataset(40)
    perm = np.random.default_rng(1).permutation(40)
    xs, ys = data.xs[perm], data.ys[perm]
    from qnnfourier.arch import evaluate_batch

    assert np.mean((evaluate_batch(spec, params, xs) - ys) ** 2) == pytest.approx(mse_loss(spec, params, data), rel=1e-13)


def central_difference(spec, params, data, h=1e-5):
    out = np.empty_like(params)
    for j in range(params.size):
        e = np.zeros_like(params)
        e[j] = h
        out[j] = (mse_loss(spec, params + e, data) - mse_loss(spec, params - e, data)) / (2 * h)
    return out


@pytest.mark.parametrize("config", range(20))
def test_parameter_shift_matches_finite_differences(config):
    family = list(Family)[config % 4]
    spec = ArchitectureSpec(family, 1 + config % 3, 1 + (config // 4) % 2)
    rng = np.random.default_rng(config)
    params = rng.uniform(0, 2 * np.pi, parameter_count(spec))
    data = top_hat_dataset(20)
    g = parameter_shift_gradient(spec, params, data)
    assert g.shape == (parameter_count(spec),)
    assert np.max(np.abs(g - central_difference(spec, params, data))) < 1e-6


def test_gradient_vanishes_at_symmetric_point():
    # all-zero angles: state stays |0>, f = 1 is a maximum in every angle
    spec = ArchitectureSpec("SequentialLinear", 2)
    params = np.zeros(parameter_count(spec))
    data = top_hat_dataset(20)
    h = 1e-3
    for j in range(params.size):
        e = np.zeros_like(params)
        e[j] = h
        assert mse_loss(spec, params + e, data) == pytest.approx(mse_loss(spec, params - e, data), abs=1e-12)
    assert np.max(np.abs(parameter_shift_gradient(spec, params, data))) < 1e-10


def test_adam_zero_gradient():
    cfg = TrainConfig()
    state = AdamState(np.full(3, 0.5), np.full(3, 0.2), t=4)
    params = np.array([1.0, 2.0, 3.0])
    new_state, new_params = adam_step(state, params, np.zeros(3), cfg)
    assert np.allclose(new_state.m, 0.45) and np.allclose(new_state.v, 0.2 * 0.999)
    # nonzero m still moves params; with fresh state nothing moves
    fresh, unchanged = adam_step(AdamState.zeros(3), params, np.zeros(3), cfg)
    assert np.array_equal(unchanged, params)
    assert fresh.t == 1


@pytest.mark.parametrize("g", [1e-6, 0.3, -5.0, 1e4])
def test_adam_first_step_is_sign(g):
    cfg = TrainConfig(learning_rate=0.1)
    _, p = adam_step(AdamState.zeros(1), np.zeros(1), np.array([g]), cfg)
    # m_hat = g, v_hat = g^2 -> step = lr * g / (|g| + eps)
    assert p[0] == pytest.approx(-0.1 * g / (abs(g) + 1e-8), rel=1e-12)
    assert abs(abs(p[0]) - 0.1) < 1e-3


def test_adam_deterministic_and_shape_checked():
    cfg = TrainConfig()
    st = AdamState.zeros(2)
    a = adam_step(st, np.ones(2), np.array([0.1, -0.2]), cfg)
    b = adam_step(st, np.ones(2), np.array([0.1, -0.2]), cfg)
    assert np.array_equal(a[1], b[1]) and np.array_equal(a[0].v, b[0].v)
    with pytest.raises(ValueError):
        adam_step(st, np.ones(3), np.ones(3), cfg)


def test_train_config_validation():
    for bad in (dict(epochs=-1), dict(learning_rate=0), dict(adam_beta1=1.0), dict(adam_beta2=0.0), dict(adam_epsilon=0)):
        with pytest.raises(ValueError):
            TrainConfig(**bad)


def test_zero_epochs():
    spec = ArchitectureSpec("SequentialLinear", 2)
    res = train(spec, TrainConfig(epochs=0, seed=3))
    assert len(res.loss_history) == 0 and res.final_loss is None
    assert np.array_equal(res.final_params, res.initial_params)
    assert np.all((res.initial_params >= 0) & (res.initial_params < 2 * np.pi))


def test_train_deterministic():
    spec = ArchitectureSpec("SequentialExponential", 2)
    a = train(spec, TrainConfig(epochs=15, seed=9))
    b = train(spec, TrainConfig(epochs=15, seed=9))
    assert a.to_json() == b.to_json()
    assert a.final_loss == a.loss_history[-1]
    assert len(a.loss_history) == 15


# -- properties of the acceptance training runs ------------------------------


def test_training_makes_progress(trained_runs):
    for family, runs in trained_runs.items():
        improved = sum(r.final_loss < r.loss_history[0] for r in runs)
        assert improved >= 4, family
        for r in runs:
            best = np.minimum.accumulate(r.loss_history)
            assert np.all(np.diff(best) <= 0)


def test_linear_loss_above_truncated_optimum(trained_runs):
    floor = optimal_truncated_mse(100, 2)
    assert floor == pytest.approx(0.0472909528871, abs=1e-12)
    for family in (Family.SEQUENTIAL_LINEAR, Family.PARALLEL_LINEAR):
        for r in trained_runs[family]:
            assert r.loss_history.min() >= floor - 1e-3


def test_trained_spectra_confined(trained_runs):
    for family in (Family.SEQUENTIAL_LINEAR, Family.PARALLEL_LINEAR):
        for r in trained_runs[family]:
            s = model_spectrum(ArchitectureSpec(family, 2), r.final_params, num_samples=9)
            assert s.amplitude(3) < 1e-3 and s.amplitude(4) < 1e-3
    for family in (Family.SEQUENTIAL_EXPONENTIAL, Family.PARALLEL_EXPONENTIAL):
        hits = 0
        for r in trained_runs[family]:
            s = model_spectrum(ArchitectureSpec(family, 2), r.final_params)
            hits += max(s.amplitude(3), s.amplitude(4)) > 1e-2
        assert hits >= 4, family
