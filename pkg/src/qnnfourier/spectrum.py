"""Fourier spectra of the encoding architectures.

Two routes to the same object: the *predicted* spectrum follows from the
eigenvalues of the encoding generator (every ordered eigenvalue difference
is a wavenumber), and the *empirical* spectrum comes from a DFT of the model
sampled on a uniform grid. Coefficients use ``c_k = mean(f(x_j) e^{-ikx_j})``
so that ``f(x) = sum_k c_k e^{ikx}``.
"""

from __future__ import annotations

import csv
import io
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .arch import ArchitectureSpec, evaluate_batch, random_params, scaling_factors

PHASE_CUTOFF = 1e-9
RECONSTRUCTION_TOL = 1e-9


class SpectrumError(ValueError):
    """Raised when a spectrum fails an internal consistency check."""


class AliasingError(SpectrumError):
    """The sampled model has content above the requested ``k_max``."""


@dataclass(frozen=True)
class WavenumberProfile:
    """Degeneracy count per integer wavenumber."""

    entries: dict

    @property
    def k_max(self) -> int:
        return max(abs(k) for k in self.entries)

    @property
    def wavenumbers(self) -> list[int]:
        return sorted(self.entries)

    @property
    def frequencies(self) -> list[int]:
        return sorted(k for k in self.entries if k > 0)

    def degeneracy(self, k: int) -> int:
        return self.entries.get(k, 0)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "degeneracy"])
        for k in self.wavenumbers:
            writer.writerow([k, self.entries[k]])
        return buf.getvalue()


def generator_eigenvalues(spec: ArchitectureSpec) -> np.ndarray:
    """Diagonal of the combined encoding generator, in basis-state order.

    Entry ``b`` is ``0.5 * sum_l (+-a_l)`` with the sign of term ``l`` set by
    bit ``l`` of ``b`` (``+`` for 0). For parallel families this is the
    literal diagonal over the ``2**n`` qubit basis states; for sequential
    families it enumerates the path sums through the ``n`` single-qubit
    encodings, which produce the same wavenumber set.
    """
    scales = np.asarray(scaling_factors(spec), dtype=float)
    idx = np.arange(2 ** len(scales))
    bits = (idx[:, None] >> np.arange(len(scales))) & 1
    return 0.5 * ((1 - 2 * bits) @ scales)


def wavenumber_profile(eigs: Iterable[float]) -> WavenumberProfile:
    """Count ordered eigenvalue pairs ``(a, b)`` by their difference ``a - b``."""
    eigs = np.asarray(list(eigs), dtype=float)
    if eigs.size == 0:
        raise ValueError("need at least one eigenvalue")
    diffs = (eigs[:, None] - eigs[None, :]).ravel()
    rounded = np.rint(diffs)
    if np.any(np.abs(diffs - rounded) > 1e-9):
        raise SpectrumError("eigenvalue differences are not integers; scaling list is broken")
    return WavenumberProfile(dict(sorted(Counter(int(k) for k in rounded).items())))


def predicted_profile(spec: ArchitectureSpec) -> WavenumberProfile:
    return wavenumber_profile(generator_eigenvalues(spec))


def predicted_frequencies(spec: ArchitectureSpec) -> list[int]:
    return predicted_profile(spec).frequencies


def frequency_upper_bound(d: int, L: int) -> float:
    """Ceiling ``d**(2L) / 2 - 1`` on the frequency count for ``L`` encodings of dimension ``d``."""
    if d < 2 or L < 1:
        raise ValueError(f"need d >= 2 and L >= 1, got d={d}, L={L}")
    return d ** (2 * L) / 2 - 1


# -- empirical spectra -------------------------------------------------------


@dataclass(frozen=True)
class FourierSpectrum:
    coefficients: dict
    sample_count: int

    @property
    def k_max(self) -> int:
        return max(self.coefficients)

    def coefficient(self, k: int) -> complex:
        return self.coefficients.get(k, 0j)

    def amplitude(self, k: int) -> float:
        return abs(self.coefficient(k))

    def phase(self, k: int) -> Optional[float]:
        """``arg c_k`` in ``(-pi, pi]``, or ``None`` when ``|c_k|`` is below 1e-9."""
        return _phase(self.coefficient(k))

    def support(self, tol: float = 1e-8) -> list[int]:
        return [k for k, c in sorted(self.coefficients.items()) if abs(c) > tol]

    def __call__(self, x):
        """Evaluate the truncated series ``sum_k c_k e^{ikx}`` (real part)."""
        x = np.asarray(x, dtype=float)
        ks = np.array(sorted(self.coefficients))
        cs = np.array([self.coefficients[k] for k in ks])
        return np.real(np.exp(1j * np.multiply.outer(x, ks)) @ cs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "re", "im", "amplitude", "phase"])
        for k in sorted(self.coefficients):
            c = self.coefficients[k]
            ph = self.phase(k)
            writer.writerow([k, repr(c.real), repr(c.imag), repr(abs(c)), "" if ph is None else repr(ph)])
        return buf.getvalue()


def _phase(c: complex) -> Optional[float]:
    if abs(c) < PHASE_CUTOFF:
        return None
    ph = float(np.angle(c))
    return np.pi if ph == -np.pi else ph


def sample_grid(num_samples: int, offset: float = 0.0) -> np.ndarray:
    return 2 * np.pi * np.arange(num_samples) / num_samples + offset


def fourier_coefficients(samples: np.ndarray, k_max: int) -> np.ndarray:
    """``c_{-k_max..k_max}`` from samples on the uniform grid ``2*pi*j/N`` (last axis).

    Returns shape ``samples.shape[:-1] + (2*k_max + 1,)``.
    """
    samples = np.asarray(samples, dtype=float)
    n = samples.shape[-1]
    if n < 2 * k_max + 1:
        raise ValueError(f"need at least {2 * k_max + 1} samples for k_max={k_max}, got {n}")
    full = np.fft.fft(samples, axis=-1) / n
    ks = np.arange(-k_max, k_max + 1)
    return full[..., ks % n]


def extract_fourier(
    model: Callable[[np.ndarray], np.ndarray],
    k_max: int,
    num_samples: Optional[int] = None,
    verify: bool = True,
) -> FourierSpectrum:
    """Sample a 2pi-periodic ``model`` and return its coefficients up to ``k_max``.

    ``model`` receives arrays of grid points. With ``verify`` the
    truncated series is checked against extra samples on the half-step
    offset grid; any mismatch above 1e-9 means the model has content beyond
    ``k_max`` and raises :class:`AliasingError`.
    """
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    n = 2 * k_max + 1 if num_samples is None else int(num_samples)
    xs = sample_grid(n)
    ys = np.asarray(model(xs), dtype=float).reshape(n)
    coeffs = fourier_coefficients(ys, k_max)
    spec = FourierSpectrum(
        {k: complex(c) for k, c in zip(range(-k_max, k_max + 1), coeffs)}, n
    )
    if verify:
        # on-grid residual only constrains the fit when the grid oversamples k_max
        x_check = np.concatenate([xs, sample_grid(n, offset=np.pi / n)])
        y_check = np.concatenate([ys, np.asarray(model(x_check[n:]), dtype=float).reshape(n)])
        err = np.max(np.abs(spec(x_check) - y_check))
        if err > RECONSTRUCTION_TOL:
            raise AliasingError(
                f"truncated series misses samples by {err:.3g}; model bandwidth exceeds k_max={k_max}"
            )
    return spec


def model_spectrum(spec: ArchitectureSpec, params, num_samples: Optional[int] = None) -> FourierSpectrum:
    """Empirical spectrum of ``f(., params)`` up to the predicted ``k_max``."""
    k_max = predicted_profile(spec).k_max
    return extract_fourier(lambda x: evaluate_batch(spec, params, x), k_max, num_samples)


# -- accessibility -----------------------------------------------------------


@dataclass(frozen=True)
class AccessibilityTable:
    """Amplitude and phase of ``c_k`` for ``k = 1..k_max`` per random realization.

    ``phase`` holds NaN where ``|c_k|`` is too small for the argument to mean
    anything.
    """

    spec: ArchitectureSpec
    seed: int
    amplitude: np.ndarray = field(repr=False)
    phase: np.ndarray = field(repr=False)

    @property
    def num_realizations(self) -> int:
        return self.amplitude.shape[0]

    @property
    def k_max(self) -> int:
        return self.amplitude.shape[1]

    def rows(self):
        for r in range(self.num_realizations):
            for j in range(self.k_max):
                yield r, j + 1, float(self.amplitude[r, j]), float(self.phase[r, j])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["realization", "k", "amplitude", "phase"])
        for r, k, amp, ph in self.rows():
            writer.writerow([r, k, repr(amp), "" if np.isnan(ph) else repr(ph)])
        return buf.getvalue()


def realization_params(spec: ArchitectureSpec, seed: int, realization: int) -> np.ndarray:
    """Parameters of one realization; its RNG stream depends only on ``(seed, realization)``."""
    return random_params(spec, np.random.default_rng([seed, realization]))


def accessibility_sample(
    spec: ArchitectureSpec, num_realizations: int, seed: int, chunk: int = 2048
) -> AccessibilityTable:
    if num_realizations < 1:
        raise ValueError("num_realizations must be >= 1")
    k_max = predicted_profile(spec).k_max
    n = 2 * k_max + 1
    xs = sample_grid(n)
    amps = np.empty((num_realizations, k_max))
    phases = np.empty((num_realizations, k_max))
    for start in range(0, num_realizations, chunk):
        stop = min(start + chunk, num_realizations)
        params = np.stack([realization_params(spec, seed, r) for r in range(start, stop)])
        ys = evaluate_batch(spec, np.repeat(params, n, axis=0), np.tile(xs, stop - start))
        c = fourier_coefficients(ys.reshape(stop - start, n), k_max)[:, k_max + 1:]
        amps[start:stop] = np.abs(c)
        ph = np.angle(c)
        ph[ph == -np.pi] = np.pi
        ph[amps[start:stop] < PHASE_CUTOFF] = np.nan
        phases[start:stop] = ph
    return AccessibilityTable(spec, seed, amps, phases)


def phase_pair_occupancy(table: AccessibilityTable, bins: int = 20) -> dict:
    """Fraction of non-empty cells in a ``bins x bins`` grid over each ``(arg c_i, arg c_j)`` plane.

    Keys are ``(i, j)`` with ``1 <= i < j <= k_max``. Realizations with an
    undefined phase in either coordinate are skipped for that pair.
    """
    edges = np.linspace(-np.pi, np.pi, bins + 1)
    out = {}
    for i, j in itertools.combinations(range(1, table.k_max + 1), 2):
        a, b = table.phase[:, i - 1], table.phase[:, j - 1]
        ok = ~(np.isnan(a) | np.isnan(b))
        hist, _, _ = np.histogram2d(a[ok], b[ok], bins=[edges, edges])
        out[(i, j)] = float(np.count_nonzero(hist)) / bins**2
    return out
