"""Dense statevector simulation for few-qubit circuits.

Bit order: qubit ``q`` is bit ``q`` of the basis-state index, so qubit 0 is
the least significant bit. In Kronecker-product notation the highest qubit
is the leftmost factor, ``|q_{n-1} ... q_1 q_0>``.

The public :class:`StateVector`/:class:`Gate` API is value-in/value-out. The
``*_batch`` kernels operate on stacked amplitude arrays of shape
``(batch, 2**n)`` and are what the circuit builders use internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

MAX_QUBITS = 24

SINGLE_QUBIT_KINDS = ("RX", "RY", "RZ", "Rot")
GATE_KINDS = SINGLE_QUBIT_KINDS + ("CNOT",)
_N_ANGLES = {"RX": 1, "RY": 1, "RZ": 1, "Rot": 3, "CNOT": 0}


def _check_qubit(qubit: int, n_qubits: int) -> None:
    if not isinstance(qubit, (int, np.integer)) or not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit index {qubit!r} out of range for {n_qubits} qubits")


@dataclass(frozen=True)
class StateVector:
    """Immutable pure state of ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise ValueError(
                f"expected {2 ** self.n_qubits} amplitudes, got {amps.size}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class Gate:
    """A single gate; build with :func:`rx`, :func:`ry`, :func:`rz`, :func:`rot`, :func:`cnot`."""

    kind: str
    target: int
    control: Optional[int] = None
    angles: tuple = ()

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        angles = tuple(float(a) for a in self.angles)
        if len(angles) != _N_ANGLES[self.kind]:
            raise ValueError(
                f"{self.kind} takes {_N_ANGLES[self.kind]} angle(s), got {len(angles)}"
            )
        object.__setattr__(self, "angles", angles)
        if self.kind == "CNOT":
            if self.control is None:
                raise ValueError("CNOT requires a control qubit")
            if self.control == self.target:
                raise ValueError("CNOT control and target must differ")
        elif self.control is not None:
            raise ValueError(f"{self.kind} takes no control qubit")

    def inverse(self) -> "Gate":
        if self.kind == "CNOT":
            return self
        if self.kind == "Rot":
            a, b, c = self.angles
            # (RZ(c) RY(b) RZ(a))^-1 = RZ(-a) RY(-b) RZ(-c) = Rot(-c, -b, -a)
            return Gate("Rot", self.target, angles=(-c, -b, -a))
        return Gate(self.kind, self.target, angles=(-self.angles[0],))

    def matrix(self) -> np.ndarray:
        """2x2 unitary for rotations, 4x4 (basis ``|control, target>``) for CNOT."""
        if self.kind == "CNOT":
            return np.array(
                [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
            )
        return rotation_matrices(self.kind, np.asarray(self.angles)[None, :])[0]


def rx(qubit: int, theta: float) -> Gate:
    return Gate("RX", qubit, angles=(theta,))


def ry(qubit: int, theta: float) -> Gate:
    return Gate("RY", qubit, angles=(theta,))


def rz(qubit: int, theta: float) -> Gate:
    return Gate("RZ", qubit, angles=(theta,))


def rot(qubit: int, alpha: float, beta: float, gamma: float) -> Gate:
    """General SU(2) rotation ``RZ(gamma) @ RY(beta) @ RZ(alpha)``."""
    return Gate("Rot", qubit, angles=(alpha, beta, gamma))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", target, control=control)


def rotation_matrices(kind: str, angles: np.ndarray) -> np.ndarray:
    """Stack of 2x2 rotation matrices, shape ``(batch, 2, 2)``.

    ``angles`` has shape ``(batch,)`` or ``(batch, 1)`` for RX/RY/RZ and
    ``(batch, 3)`` for Rot.
    """
    angles = np.asarray(angles, dtype=float)
    if kind == "Rot":
        a, b, c = angles[:, 0], angles[:, 1], angles[:, 2]
        cb, sb = np.cos(b / 2), np.sin(b / 2)
        # RZ(c) RY(b) RZ(a), multiplied out
        out = np.empty((angles.shape[0], 2, 2), dtype=complex)
        out[:, 0, 0] = np.exp(-0.5j * (a + c)) * cb
        out[:, 0, 1] = -np.exp(0.5j * (a - c)) * sb
        out[:, 1, 0] = np.exp(-0.5j * (a - c)) * sb
        out[:, 1, 1] = np.exp(0.5j * (a + c)) * cb
        return out
    t = angles.reshape(-1)
    c, s = np.cos(t / 2), np.sin(t / 2)
    out = np.zeros((t.shape[0], 2, 2), dtype=complex)
    if kind == "RX":
        out[:, 0, 0] = c
        out[:, 1, 1] = c
        out[:, 0, 1] = -1j * s
        out[:, 1, 0] = -1j * s
    elif kind == "RY":
        out[:, 0, 0] = c
        out[:, 1, 1] = c
        out[:, 0, 1] = -s
        out[:, 1, 0] = s
    elif kind == "RZ":
        out[:, 0, 0] = np.exp(-0.5j * t)
        out[:, 1, 1] = np.exp(0.5j * t)
    else:
        raise ValueError(f"not a rotation kind: {kind!r}")
    return out


# -- batched kernels ---------------------------------------------------------


def zero_state_batch(n_qubits: int, batch: int) -> np.ndarray:
    psi = np.zeros((batch, 2**n_qubits), dtype=complex)
    psi[:, 0] = 1.0
    return psi


def apply_1q_batch(psi: np.ndarray, mats: np.ndarray, qubit: int) -> np.ndarray:
    """Apply one 2x2 matrix per batch row (``mats``: ``(batch, 2, 2)`` or ``(2, 2)``)."""
    batch, dim = psi.shape
    view = psi.reshape(batch, dim >> (qubit + 1), 2, 1 << qubit)
    lo, hi = view[:, :, 0, :], view[:, :, 1, :]
    if mats.ndim == 2:
        m = mats
    else:
        m = mats[:, None, None, :, :]
    out = np.empty_like(view)
    out[:, :, 0, :] = m[..., 0, 0] * lo + m[..., 0, 1] * hi
    out[:, :, 1, :] = m[..., 1, 0] * lo + m[..., 1, 1] * hi
    return out.reshape(batch, dim)


def apply_rz_batch(psi: np.ndarray, angles: np.ndarray, qubit: int) -> np.ndarray:
    """Diagonal fast path for RZ with one angle per batch row."""
    bits = (np.arange(psi.shape[1]) >> qubit) & 1
    signs = np.where(bits == 0, -0.5, 0.5)
    return psi * np.exp(1j * np.outer(np.asarray(angles, dtype=float), signs))


@lru_cache(maxsize=None)
def _cnot_permutation(n_qubits: int, control: int, target: int) -> np.ndarray:
    idx = np.arange(2**n_qubits)
    flip = ((idx >> control) & 1).astype(bool)
    perm = idx.copy()
    perm[flip] ^= 1 << target
    perm.flags.writeable = False
    return perm


def apply_cnot_batch(psi: np.ndarray, control: int, target: int) -> np.ndarray:
    n_qubits = psi.shape[1].bit_length() - 1
    return psi[:, _cnot_permutation(n_qubits, control, target)]


def expectation_z_batch(psi: np.ndarray, qubit: int) -> np.ndarray:
    signs = 1.0 - 2.0 * ((np.arange(psi.shape[1]) >> qubit) & 1)
    return (psi.real**2 + psi.imag**2) @ signs


# -- public value API --------------------------------------------------------


def new_zero_state(n_qubits: int) -> StateVector:
    """``|0...0>`` on ``n_qubits`` qubits (1 <= n_qubits <= 24)."""
    if not isinstance(n_qubits, (int, np.integer)) or not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be an integer in [1, {MAX_QUBITS}], got {n_qubits!r}")
    return StateVector(int(n_qubits), zero_state_batch(int(n_qubits), 1)[0])


def basis_state(n_qubits: int, index: int) -> StateVector:
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    _check_qubit(gate.target, state.n_qubits)
    psi = state.amplitudes[None, :]
    if gate.kind == "CNOT":
        _check_qubit(gate.control, state.n_qubits)
        out = apply_cnot_batch(psi, gate.control, gate.target)
    elif gate.kind == "RZ":
        out = apply_rz_batch(psi, np.array(gate.angles), gate.target)
    else:
        out = apply_1q_batch(psi, gate.matrix(), gate.target)
    return StateVector(state.n_qubits, out[0])


def apply_gates(state: StateVector, gates: Sequence[Gate]) -> StateVector:
    for gate in gates:
        state = apply_gate(state, gate)
    return state


def expectation_z(state: StateVector, qubit: int = 0) -> float:
    """<Z> on ``qubit``: +1 weight for bit value 0, -1 for bit value 1."""
    _check_qubit(qubit, state.n_qubits)
    return float(expectation_z_batch(state.amplitudes[None, :], qubit)[0])
