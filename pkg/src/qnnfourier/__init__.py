"""Linear and exponential angle-encoding architectures for quantum Fourier models."""

__version__ = "0.1.0"

from .arch import (
    ArchitectureSpec,
    Family,
    evaluate,
    evaluate_batch,
    model_function,
    parameter_count,
    scaling_factors,
    variational_block,
)
from .diffset import difference_multiset, is_perfect, search_perfect
from .spectrum import (
    FourierSpectrum,
    WavenumberProfile,
    accessibility_sample,
    extract_fourier,
    frequency_upper_bound,
    generator_eigenvalues,
    predicted_frequencies,
    wavenumber_profile,
)
from .train import Dataset, TrainConfig, TrainResult, top_hat_dataset, train

__all__ = [
    "ArchitectureSpec",
    "Dataset",
    "Family",
    "FourierSpectrum",
    "TrainConfig",
    "TrainResult",
    "WavenumberProfile",
    "accessibility_sample",
    "difference_multiset",
    "evaluate",
    "evaluate_batch",
    "extract_fourier",
    "frequency_upper_bound",
    "generator_eigenvalues",
    "is_perfect",
    "model_function",
    "parameter_count",
    "predicted_frequencies",
    "scaling_factors",
    "search_perfect",
    "top_hat_dataset",
    "train",
    "variational_block",
    "wavenumber_profile",
]
