"""The four encoding architectures and their model function ``f(x, theta)``.

Sequential families act on one qubit and interlace ``n`` encodings
``RZ(a_l * x)`` with ``n + 1`` variational blocks. Parallel families act on
``n`` qubits: variational block, one layer of ``RZ(a_q * x)`` (one per
qubit), variational block, then a CNOT cascade into qubit 0, which is
measured in Z.

A variational block is ``var_depth`` layers of ``Rot`` on every qubit
followed by a CNOT ring (``q -> q+1 mod n``) when there are at least two
qubits.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .statevec import (
    StateVector,
    apply_cnot_batch,
    apply_1q_batch,
    apply_rz_batch,
    expectation_z_batch,
    rotation_matrices,
    zero_state_batch,
)


class Family(str, enum.Enum):
    SEQUENTIAL_LINEAR = "SequentialLinear"
    SEQUENTIAL_EXPONENTIAL = "SequentialExponential"
    PARALLEL_LINEAR = "ParallelLinear"
    PARALLEL_EXPONENTIAL = "ParallelExponential"

    @property
    def is_parallel(self) -> bool:
        return self in (Family.PARALLEL_LINEAR, Family.PARALLEL_EXPONENTIAL)

    @property
    def is_exponential(self) -> bool:
        return self in (Family.SEQUENTIAL_EXPONENTIAL, Family.PARALLEL_EXPONENTIAL)


def default_var_depth(family: Family) -> int:
    return 3 if Family(family).is_parallel else 1


@dataclass(frozen=True)
class ArchitectureSpec:
    """Structural description of a circuit; carries no parameters.

    ``n`` is the number of encoding repetitions (sequential) or qubits
    (parallel). ``var_depth`` is the number of Rot layers per variational
    block; ``None`` picks the family default.
    """

    family: Family
    n: int
    var_depth: Optional[int] = None

    def __post_init__(self):
        try:
            family = Family(self.family)
        except ValueError:
            names = ", ".join(f.value for f in Family)
            raise ValueError(f"unknown family {self.family!r}; expected one of {names}") from None
        object.__setattr__(self, "family", family)
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        depth = default_var_depth(family) if self.var_depth is None else self.var_depth
        if isinstance(depth, bool) or not isinstance(depth, (int, np.integer)) or depth < 1:
            raise ValueError(f"var_depth must be a positive integer, got {self.var_depth!r}")
        object.__setattr__(self, "var_depth", int(depth))

    @property
    def n_qubits(self) -> int:
        return self.n if self.family.is_parallel else 1

    @property
    def n_blocks(self) -> int:
        return 2 if self.family.is_parallel else self.n + 1

    def to_dict(self) -> dict:
        return {"family": self.family.value, "n": self.n, "var_depth": self.var_depth}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ArchitectureSpec":
        if not isinstance(data, dict):
            raise ValueError("architecture spec must be a JSON object")
        unknown = set(data) - {"family", "n", "var_depth"}
        if unknown:
            raise ValueError(f"unknown spec field(s): {', '.join(sorted(unknown))}")
        for key in ("family", "n"):
            if key not in data:
                raise ValueError(f"spec is missing required field {key!r}")
        return cls(data["family"], data["n"], data.get("var_depth"))

    @classmethod
    def from_json(cls, text: str) -> "ArchitectureSpec":
        return cls.from_dict(json.loads(text))


def scaling_factors(spec: ArchitectureSpec) -> list[int]:
    """Integer multipliers of ``x`` for each encoding gate.

    Linear families use all ones. Exponential families use
    ``[1, 2, 4, ..., 2**(n-2), 2**(n-1) + 1]``, whose signed half-sums cover
    every integer wavenumber up to ``2**n``; ``n = 1`` gives ``[1]``.
    """
    if not spec.family.is_exponential or spec.n == 1:
        return [1] * spec.n
    return [2**i for i in range(spec.n - 1)] + [2 ** (spec.n - 1) + 1]


def parameter_count(spec: ArchitectureSpec) -> int:
    return spec.n_blocks * spec.var_depth * 3 * spec.n_qubits


def block_size(spec: ArchitectureSpec) -> int:
    return spec.var_depth * 3 * spec.n_qubits


def _check_params(spec: ArchitectureSpec, params) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    expected = parameter_count(spec)
    if params.shape[-1:] != (expected,):
        raise ValueError(
            f"{spec.family.value}(n={spec.n}, var_depth={spec.var_depth}) takes "
            f"{expected} parameters, got shape {params.shape}"
        )
    return params


def _block_batch(psi: np.ndarray, angles: np.ndarray, n_qubits: int) -> np.ndarray:
    """Variational block on a batch; ``angles`` has shape ``(batch, depth * 3 * n_qubits)``."""
    depth = angles.shape[1] // (3 * n_qubits)
    layers = angles.reshape(angles.shape[0], depth, n_qubits, 3)
    for layer in range(depth):
        for q in range(n_qubits):
            psi = apply_1q_batch(psi, rotation_matrices("Rot", layers[:, layer, q]), q)
        if n_qubits >= 2:
            for q in range(n_qubits):
                psi = apply_cnot_batch(psi, q, (q + 1) % n_qubits)
    return psi


def variational_block(state: StateVector, angles) -> StateVector:
    """Apply ``len(angles) / (3 * n_qubits)`` Rot + CNOT-ring layers to ``state``."""
    angles = np.asarray(angles, dtype=float).reshape(-1)
    per_layer = 3 * state.n_qubits
    if angles.size == 0 or angles.size % per_layer:
        raise ValueError(
            f"angle count must be a positive multiple of {per_layer} for "
            f"{state.n_qubits} qubit(s), got {angles.size}"
        )
    out = _block_batch(state.amplitudes[None, :], angles[None, :], state.n_qubits)
    return StateVector(state.n_qubits, out[0])


def final_state_batch(spec: ArchitectureSpec, params: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Pre-measurement states for rows of ``params`` (``(batch, P)``) and ``xs`` (``(batch,)``)."""
    scales = scaling_factors(spec)
    size = block_size(spec)
    nq = spec.n_qubits
    psi = zero_state_batch(nq, xs.shape[0])
    blocks = [params[:, b * size:(b + 1) * size] for b in range(spec.n_blocks)]
    if spec.family.is_parallel:
        psi = _block_batch(psi, blocks[0], nq)
        for q, a in enumerate(scales):
            psi = apply_rz_batch(psi, a * xs, q)
        psi = _block_batch(psi, blocks[1], nq)
        for q in range(nq - 1, 0, -1):
            psi = apply_cnot_batch(psi, q, q - 1)
    else:
        psi = _block_batch(psi, blocks[0], 1)
        for a, block in zip(scales, blocks[1:]):
            psi = apply_rz_batch(psi, a * xs, 0)
            psi = _block_batch(psi, block, 1)
    return psi


def evaluate_batch(spec: ArchitectureSpec, params, xs) -> np.ndarray:
    """Vectorised ``f(x, theta)``.

    ``params`` is either one vector (shared by all ``xs``) or a ``(batch, P)``
    array paired row-wise with ``xs``.
    """
    params = _check_params(spec, params)
    xs = np.asarray(xs, dtype=float).reshape(-1)
    if params.ndim == 1:
        params = np.broadcast_to(params, (xs.shape[0], params.shape[0]))
    elif params.shape[0] != xs.shape[0]:
        raise ValueError(f"{params.shape[0]} parameter rows for {xs.shape[0]} inputs")
    return expectation_z_batch(final_state_batch(spec, params, xs), 0)


def evaluate(spec: ArchitectureSpec, params, x: float) -> float:
    params = _check_params(spec, params)
    if params.ndim != 1:
        raise ValueError("evaluate takes a single parameter vector; use evaluate_batch")
    return float(evaluate_batch(spec, params, [x])[0])


def model_function(spec: ArchitectureSpec, params) -> Callable[[np.ndarray], np.ndarray]:
    """Freeze ``params`` and return the vectorised map ``x -> f(x, params)``."""
    params = _check_params(spec, params).copy()

    def f(x):
        x = np.asarray(x, dtype=float)
        return evaluate_batch(spec, params, x.reshape(-1)).reshape(x.shape)

    return f


def random_params(spec: ArchitectureSpec, rng: np.random.Generator) -> np.ndarray:
    """Angles drawn uniformly from ``[0, 2*pi)``."""
    return rng.uniform(0.0, 2 * np.pi, parameter_count(spec))
