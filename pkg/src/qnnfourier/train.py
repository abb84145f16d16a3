"""Full-batch Adam training on the top-hat regression task.

Gradients use the parameter-shift rule: every trainable angle enters a
single Pauli rotation, so ``df/dtheta_j = (f(theta_j + pi/2) - f(theta_j - pi/2)) / 2``
holds exactly.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .arch import ArchitectureSpec, evaluate_batch, parameter_count, random_params

logger = logging.getLogger(__name__)

SHIFT = np.pi / 2


@dataclass(frozen=True)
class Dataset:
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float).reshape(-1)
        ys = np.asarray(self.ys, dtype=float).reshape(-1)
        if xs.shape != ys.shape:
            raise ValueError(f"xs and ys differ in length: {xs.size} vs {ys.size}")
        if xs.size == 0:
            raise ValueError("dataset is empty")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        if np.any(np.abs(ys) > 1):
            raise ValueError("targets must lie in [-1, 1]")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __len__(self) -> int:
        return self.xs.size


def top_hat_dataset(num_points: int = 100) -> Dataset:
    """``num_points`` samples on ``[0, 2pi)``: 1 on ``[pi/2, 3pi/2)``, else 0.

    The right edge is open so that exactly half of any grid with
    ``num_points % 4 == 0`` lies inside the pulse.
    """
    if num_points < 2:
        raise ValueError("num_points must be >= 2")
    j = np.arange(num_points)
    xs = 2 * np.pi * j / num_points
    # compare on the integer grid to keep the pulse edges exact
    inside = (4 * j >= num_points) & (4 * j < 3 * num_points)
    return Dataset(xs, inside.astype(float))


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    learning_rate: float = 0.1
    seed: int = 0
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8

    def __post_init__(self):
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        for name in ("adam_beta1", "adam_beta2"):
            if not 0 < getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in (0, 1)")
        if not self.adam_epsilon > 0:
            raise ValueError("adam_epsilon must be positive")


@dataclass
class TrainResult:
    spec: ArchitectureSpec
    config: TrainConfig
    loss_history: np.ndarray
    initial_params: np.ndarray
    final_params: np.ndarray

    @property
    def final_loss(self) -> Optional[float]:
        return float(self.loss_history[-1]) if len(self.loss_history) else None

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "config": asdict(self.config),
            "loss_history": [float(v) for v in self.loss_history],
            "final_params": [float(v) for v in self.final_params],
            "final_loss": self.final_loss,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def loss_csv(self) -> str:
        lines = ["epoch,loss"]
        lines += [f"{i},{float(v)!r}" for i, v in enumerate(self.loss_history)]
        return "\n".join(lines) + "\n"


def mse_loss(spec: ArchitectureSpec, params, data: Dataset) -> float:
    preds = evaluate_batch(spec, params, data.xs)
    return float(np.mean((preds - data.ys) ** 2))


def _shifted_outputs(spec: ArchitectureSpec, params: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """``(f(theta + s e_j) - f(theta - s e_j)) / 2`` for every parameter ``j`` and input; shape ``(P, len(xs))``."""
    p = params.size
    shifts = np.concatenate([np.eye(p), -np.eye(p)]) * SHIFT
    batch = np.repeat(params + shifts, xs.size, axis=0)
    out = evaluate_batch(spec, batch, np.tile(xs, 2 * p)).reshape(2 * p, xs.size)
    return (out[:p] - out[p:]) / 2


def loss_and_gradient(spec: ArchitectureSpec, params, xs, ys) -> tuple[float, np.ndarray]:
    params = np.asarray(params, dtype=float)
    preds = evaluate_batch(spec, params, xs)
    resid = preds - ys
    jac = _shifted_outputs(spec, params, xs)
    return float(np.mean(resid**2)), (2.0 / xs.size) * (jac @ resid)


def parameter_shift_gradient(spec: ArchitectureSpec, params, data: Dataset) -> np.ndarray:
    """Exact gradient of :func:`mse_loss` with respect to ``params``."""
    return loss_and_gradient(spec, params, data.xs, data.ys)[1]


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @classmethod
    def zeros(cls, size: int) -> "AdamState":
        return cls(np.zeros(size), np.zeros(size), 0)


def adam_step(state: AdamState, params, gradient, config: TrainConfig) -> tuple[AdamState, np.ndarray]:
    params = np.asarray(params, dtype=float)
    gradient = np.asarray(gradient, dtype=float)
    if not params.shape == gradient.shape == state.m.shape:
        raise ValueError("params, gradient and optimizer state must have the same shape")
    b1, b2 = config.adam_beta1, config.adam_beta2
    t = state.t + 1
    m = b1 * state.m + (1 - b1) * gradient
    v = b2 * state.v + (1 - b2) * gradient**2
    m_hat = m / (1 - b1**t)
    v_hat = v / (1 - b2**t)
    step = config.learning_rate * m_hat / (np.sqrt(v_hat) + config.adam_epsilon)
    return AdamState(m, v, t), params - step


def initial_params(spec: ArchitectureSpec, seed: int) -> np.ndarray:
    return random_params(spec, np.random.default_rng(seed))


def fit_params(spec: ArchitectureSpec, xs, ys, config: TrainConfig, init=None) -> TrainResult:
    """Adam loop on arbitrary ``(xs, ys)``; ``loss_history[e]`` is the MSE before update ``e``."""
    xs = np.asarray(xs, dtype=float).reshape(-1)
    ys = np.asarray(ys, dtype=float).reshape(-1)
    params = initial_params(spec, config.seed) if init is None else np.array(init, dtype=float)
    if params.size != parameter_count(spec):
        raise ValueError(f"expected {parameter_count(spec)} initial parameters, got {params.size}")
    start = params.copy()
    state = AdamState.zeros(params.size)
    history = np.empty(config.epochs)
    for epoch in range(config.epochs):
        history[epoch], grad = loss_and_gradient(spec, params, xs, ys)
        state, params = adam_step(state, params, grad, config)
        if epoch % 50 == 0:
            logger.debug("%s n=%d epoch %d loss %.6f", spec.family.value, spec.n, epoch, history[epoch])
    return TrainResult(spec, config, history, start, params)


def train(spec: ArchitectureSpec, config: TrainConfig, data: Optional[Dataset] = None) -> TrainResult:
    """Train from a uniform ``[0, 2pi)`` initialisation drawn from ``config.seed``."""
    data = top_hat_dataset() if data is None else data
    return fit_params(spec, data.xs, data.ys, config)
